"""Free noncommutative polynomial algebra.

A polynomial in d noncommuting letters is a finite map from words (tuples of
letter indices in ``range(d)``) to complex coefficients.  Words multiply by
concatenation, so the product of polynomials is the convolution of their
coefficient maps.  Evaluation substitutes a tuple of square matrices for the
letters; the empty word evaluates to the identity matrix.

Terms are kept in canonical graded-lexicographic order for serialization and
deterministic iteration.  Coefficients are double-precision complex; a stored
coefficient is never exactly zero (literal cancellation prunes the term).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionMismatchError

Word = tuple[int, ...]

# Workspace cap (complex entries) for chunked evaluation of large polynomials.
_EVAL_WORKSPACE = 2**21

_LETTER_NAMES = "xyz"


def _graded_lex_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


@dataclass(frozen=True)
class NCPolynomial:
    """Finite complex linear combination of words over ``d`` letters."""

    d: int
    terms: dict[Word, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"need at least one letter, got d={self.d}")
        clean: dict[Word, complex] = {}
        for w, c in self.terms.items():
            w = tuple(int(i) for i in w)
            if any(i < 0 or i >= self.d for i in w):
                raise ValueError(f"word {w} uses letters outside range({self.d})")
            c = complex(c)
            if c != 0:
                clean[w] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> NCPolynomial:
        return cls(d, {})

    @classmethod
    def one(cls, d: int) -> NCPolynomial:
        return cls(d, {(): 1.0})

    @classmethod
    def constant(cls, d: int, value: complex) -> NCPolynomial:
        return cls(d, {(): value})

    @classmethod
    def variable(cls, d: int, index: int) -> NCPolynomial:
        if not 0 <= index < d:
            raise ValueError(f"letter index {index} outside range({d})")
        return cls(d, {(index,): 1.0})

    @classmethod
    def monomial(cls, d: int, word: Iterable[int], coeff: complex = 1.0) -> NCPolynomial:
        return cls(d, {tuple(word): coeff})

    # -- arithmetic --------------------------------------------------------

    def _check_same_d(self, other: NCPolynomial) -> None:
        if self.d != other.d:
            raise DimensionMismatchError(
                f"polynomials over different alphabets: d={self.d} vs d={other.d}"
            )

    def __add__(self, other: NCPolynomial) -> NCPolynomial:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check_same_d(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0.0) + c
        return NCPolynomial(self.d, out)

    def __neg__(self) -> NCPolynomial:
        return NCPolynomial(self.d, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: NCPolynomial) -> NCPolynomial:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> NCPolynomial:
        if isinstance(other, NCPolynomial):
            self._check_same_d(other)
            out: dict[Word, complex] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, 0.0) + c1 * c2
            return NCPolynomial(self.d, out)
        if isinstance(other, (int, float, complex)):
            return NCPolynomial(self.d, {w: c * other for w, c in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other) -> NCPolynomial:
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> NCPolynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = NCPolynomial.one(self.d)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            if base_needed:
                base = base * base
            e >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | float:
        """Max word length; ``-inf`` for the zero polynomial.

        The marker keeps exponent formulas from silently treating the zero
        polynomial as degree -1.
        """
        if not self.terms:
            return float("-inf")
        return max(len(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def homogeneous_component(self, degree: int) -> NCPolynomial:
        return NCPolynomial(
            self.d, {w: c for w, c in self.terms.items() if len(w) == degree}
        )

    def term_count(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Word, complex]]:
        """Terms in canonical graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda item: _graded_lex_key(item[0]))

    # -- norms -------------------------------------------------------------

    def h2_norm(self) -> float:
        """Euclidean norm of the coefficient vector (full Fock space norm)."""
        if not self.terms:
            return 0.0
        return float(np.linalg.norm(np.array(list(self.terms.values()))))

    def l1_norm(self) -> float:
        """Sum of absolute coefficients.

        Upper bound for the sup norm over the closed row ball: every word
        evaluates to a contraction there.
        """
        return float(sum(abs(c) for c in self.terms.values()))

    def normalize_h2(self) -> NCPolynomial:
        norm = self.h2_norm()
        if norm == 0.0:
            raise ValueError("cannot H2-normalize the zero polynomial")
        return self * (1.0 / norm)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, X: MatrixTuple) -> np.ndarray:
        """Evaluate at a matrix tuple: sum of c_w * X[w_1] @ ... @ X[w_k].

        Word products are computed in parallel over terms by pairwise
        (log-depth) batched multiplication; words shorter than the longest
        are right-padded with an identity sentinel.  Work is chunked to keep
        the batch workspace bounded.
        """
        if self.d != X.d:
            raise DimensionMismatchError(
                f"polynomial has d={self.d} letters but tuple has d={X.d}"
            )
        n = X.n
        out = np.zeros((n, n), dtype=complex)
        if not self.terms:
            return out
        items = self.sorted_terms()
        maxlen = len(items[-1][0])
        if maxlen == 0:
            out[np.diag_indices(n)] = items[0][1]
            return out
        stack = np.concatenate([X.mats, np.eye(n, dtype=complex)[None]], axis=0)
        chunk = max(1, _EVAL_WORKSPACE // (maxlen * n * n))
        for start in range(0, len(items), chunk):
            block = items[start : start + chunk]
            idx = np.full((len(block), maxlen), self.d, dtype=np.intp)
            for row, (w, _) in enumerate(block):
                idx[row, : len(w)] = w
            coeffs = np.array([c for _, c in block])
            mats = stack[idx]
            while mats.shape[1] > 1:
                m = mats.shape[1]
                even = m - (m % 2)
                prod = mats[:, 0:even:2] @ mats[:, 1:even:2]
                if m % 2:
                    prod = np.concatenate([prod, mats[:, -1:]], axis=1)
                mats = prod
            out += np.einsum("t,tij->ij", coeffs, mats[:, 0])
        return out

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "terms": [
                {"w": list(w), "c": [c.real, c.imag]} for w, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> NCPolynomial:
        d = int(obj["d"])
        terms: dict[Word, complex] = {}
        for entry in obj["terms"]:
            w = tuple(int(i) for i in entry["w"])
            re, im = entry["c"]
            terms[w] = terms.get(w, 0.0) + complex(float(re), float(im))
        return cls(d, terms)

    # -- display -------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.sorted_terms():
            if self.d <= len(_LETTER_NAMES):
                mono = "".join(_LETTER_NAMES[i] for i in w) or "1"
            else:
                mono = "*".join(f"x{i}" for i in w) or "1"
            pieces.append(f"({c:.6g})*{mono}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"NCPolynomial(d={self.d}, terms={len(self.terms)}, degree={self.degree()})"


@dataclass(frozen=True)
class MatrixTuple:
    """A point of the matrix universe: d complex n-by-n matrices."""

    mats: np.ndarray

    def __post_init__(self):
        mats = np.asarray(self.mats, dtype=complex)
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise ValueError(f"expected shape (d, n, n), got {mats.shape}")
        if mats.shape[0] < 1 or mats.shape[1] < 1:
            raise ValueError(f"need d >= 1 and n >= 1, got shape {mats.shape}")
        mats = mats.copy()
        mats.flags.writeable = False
        object.__setattr__(self, "mats", mats)

    @property
    def d(self) -> int:
        return self.mats.shape[0]

    @property
    def n(self) -> int:
        return self.mats.shape[1]

    def __getitem__(self, i: int) -> np.ndarray:
        return self.mats[i]

    @classmethod
    def from_matrices(cls, matrices: Iterable[np.ndarray]) -> MatrixTuple:
        return cls(np.stack([np.asarray(m, dtype=complex) for m in matrices]))

    @classmethod
    def zero(cls, n: int, d: int) -> MatrixTuple:
        return cls(np.zeros((d, n, n), dtype=complex))

    def direct_sum(self, other: MatrixTuple) -> MatrixTuple:
        if self.d != other.d:
            raise DimensionMismatchError(
                f"direct sum needs matching d: {self.d} vs {other.d}"
            )
        n, m = self.n, other.n
        out = np.zeros((self.d, n + m, n + m), dtype=complex)
        out[:, :n, :n] = self.mats
        out[:, n:, n:] = other.mats
        return MatrixTuple(out)

    def row(self) -> np.ndarray:
        """The 1-by-d block row [X_1 ... X_d] as an n-by-(d*n) matrix."""
        return np.hstack(list(self.mats))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "mats": [
                [[[z.real, z.imag] for z in row] for row in mat] for mat in self.mats
            ],
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> MatrixTuple:
        n = int(obj["n"])
        d = int(obj["d"])
        mats = np.zeros((d, n, n), dtype=complex)
        raw = obj["mats"]
        if len(raw) != d:
            raise ValueError(f"expected {d} matrices, got {len(raw)}")
        for i, mat in enumerate(raw):
            for r, row in enumerate(mat):
                for c, (re, im) in enumerate(row):
                    mats[i, r, c] = complex(float(re), float(im))
        return cls(mats)


@dataclass(frozen=True)
class PolyMatrix:
    """Rectangular grid of polynomials sharing one alphabet."""

    entries: tuple[tuple[NCPolynomial, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(row) for row in self.entries)
        if not entries or not entries[0]:
            raise ValueError("polynomial matrix must be nonempty")
        cols = len(entries[0])
        d = entries[0][0].d
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged polynomial matrix")
            for p in row:
                if p.d != d:
                    raise DimensionMismatchError(
                        "all entries of a polynomial matrix must share d"
                    )
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def d(self) -> int:
        return self.entries[0][0].d

    def evaluate(self, X: MatrixTuple) -> np.ndarray:
        """Blockwise evaluation: an (rows*n)-by-(cols*n) matrix."""
        if self.d != X.d:
            raise DimensionMismatchError(
                f"polynomial matrix has d={self.d} but tuple has d={X.d}"
            )
        return np.block([[p.evaluate(X) for p in row] for row in self.entries])

    def block_diag(self, other: PolyMatrix) -> PolyMatrix:
        if self.d != other.d:
            raise DimensionMismatchError(
                f"block diagonal needs matching d: {self.d} vs {other.d}"
            )
        zero = NCPolynomial.zero(self.d)
        top = tuple(row + (zero,) * other.cols for row in self.entries)
        bottom = tuple((zero,) * self.cols + row for row in other.entries)
        return PolyMatrix(top + bottom)
