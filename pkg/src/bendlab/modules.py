"""Coefficient modules for twisted cohomology and the Ad-invariant splitting.

Three module kinds over a representation preserving a form Q:

* ``standard`` -- the defining action on R^{n,1}; dimension n+1.
* ``nu``       -- Q-self-adjoint traceless matrices {V : V^T Q = Q V, tr V = 0},
                  the Ad-invariant complement of so(Q) in sl(n+1);
                  dimension n(n+3)/2. Action is Ad in a fixed exact basis.
* ``adjoint``  -- so(Q) = {V : V^T Q + Q V = 0}; dimension n(n+1)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import RationalMatrix, in_column_space, nullspace, rref_rank
from .reps import QuadraticForm, Representation
from .words import GroupRingElem, Word

KINDS = ("standard", "nu", "adjoint")


def _vec(m: RationalMatrix) -> list[Fraction]:
    return [m[i, j] for i in range(m.rows) for j in range(m.cols)]


def _basis_columns(basis) -> RationalMatrix:
    cols = [_vec(b) for b in basis]
    n2 = len(cols[0])
    return RationalMatrix(n2, len(cols), [cols[j][i] for i in range(n2)
                                          for j in range(len(cols))])


def nu_basis(form: QuadraticForm) -> list[RationalMatrix]:
    """Exact basis of {V : V^T Q = Q V, tr V = 0}: V = Q^-1 S over the standard
    symmetric basis, projected to traceless combinations against the last
    candidate of nonzero trace (the last diagonal one when Q is diagonal)."""
    n1 = form.size
    qi = form.inverse
    diag, offd = [], []
    for i in range(n1):
        for j in range(i, n1):
            s = [[Fraction(0)] * n1 for _ in range(n1)]
            s[i][j] = Fraction(1)
            if i != j:
                s[j][i] = Fraction(1)
            v = qi * RationalMatrix.from_rows(s)
            (diag if i == j else offd).append(v)
    candidates = diag + offd
    traced = [(k, v.trace()) for k, v in enumerate(candidates) if v.trace() != 0]
    if not traced:
        raise ValueError("degenerate form: no trace completion available")
    # prefer a diagonal completion element when one exists
    diag_traced = [(k, t) for k, t in traced if k < len(diag)]
    last, tl = (diag_traced or traced)[-1]
    completion = candidates[last]
    basis = []
    for k, v in enumerate(candidates):
        if k == last:
            continue
        t = v.trace()
        basis.append(v if t == 0 else v - completion.scale(t / tl))
    return basis


def adjoint_basis(form: QuadraticForm) -> list[RationalMatrix]:
    """Exact basis of so(Q) = {V : V^T Q + Q V = 0}: V = Q^-1 A over the
    standard antisymmetric basis."""
    n1 = form.size
    qi = form.inverse
    basis = []
    for i in range(n1):
        for j in range(i + 1, n1):
            a = [[Fraction(0)] * n1 for _ in range(n1)]
            a[i][j] = Fraction(1)
            a[j][i] = Fraction(-1)
            basis.append(qi * RationalMatrix.from_rows(a))
    return basis


class CoefficientModule:
    """A dimension d plus a homomorphic rule Word -> d x d action matrix."""

    def __init__(self, rep: Representation, kind: str):
        if kind not in KINDS:
            raise ValueError(f"unknown module kind {kind!r}")
        self.rep = rep
        self.kind = kind
        n = rep.ambient_dimension
        if kind == "standard":
            self.basis = []
            self.dimension = n + 1
            self._gen_action = {g: rep.images[g] for g in rep.presentation.generators}
        else:
            self.basis = nu_basis(rep.form) if kind == "nu" else adjoint_basis(rep.form)
            expected = n * (n + 3) // 2 if kind == "nu" else n * (n + 1) // 2
            if len(self.basis) != expected:
                raise ValueError(f"{kind} basis has {len(self.basis)} elements, "
                                 f"expected {expected}")
            self.dimension = expected
            self._columns = _basis_columns(self.basis)
            self._gen_action = {g: self._ad_matrix(rep.images[g])
                                for g in rep.presentation.generators}
        self._gen_action_inv = {g: m.inverse() for g, m in self._gen_action.items()}
        self._word_cache: dict[tuple, RationalMatrix] = {}

    def _ad_matrix(self, m: RationalMatrix) -> RationalMatrix:
        # one elimination for all basis images: RREF of [columns | images]
        mi = m.inverse()
        d = self.dimension
        aug = self._columns
        for b in self.basis:
            aug = aug.hstack(RationalMatrix.column(_vec(m * b * mi)))
        red, rank, pivots = rref_rank(aug)
        if rank != d or any(p >= d for p in pivots):
            raise ValueError("adjoint action does not preserve the module basis")
        cols = [[red[r, d + j] for r in range(rank)] for j in range(d)]
        return RationalMatrix(d, d, [cols[j][i] for i in range(d) for j in range(d)])

    def to_coordinates(self, m: RationalMatrix) -> tuple[Fraction, ...]:
        coords = in_column_space(self._columns, _vec(m))
        if coords is None:
            raise ValueError("matrix is not in the module subspace")
        return coords

    def from_coordinates(self, coords) -> RationalMatrix:
        out = RationalMatrix.zeros(self.rep.size, self.rep.size)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def action(self, e) -> RationalMatrix:
        """Action matrix of a Word; linear extension over GroupRingElems."""
        if isinstance(e, Word):
            return self._word_action(e)
        if isinstance(e, GroupRingElem):
            d = self.dimension
            out = RationalMatrix.zeros(d, d)
            for w, c in e.terms.items():
                out = out + self._word_action(w).scale(c)
            return out
        raise TypeError(f"cannot act on {type(e).__name__}")

    def _word_action(self, w: Word) -> RationalMatrix:
        cached = self._word_cache.get(w.letters)
        if cached is not None:
            return cached
        out = RationalMatrix.identity(self.dimension)
        for g, e in w.letters:
            if g not in self._gen_action:
                raise KeyError(f"unknown generator {g}")
            out = out * (self._gen_action[g] if e == 1 else self._gen_action_inv[g])
        if len(w.letters) <= 12:
            self._word_cache[w.letters] = out
        return out

    def invariants_dim(self, ws) -> int:
        """Dimension of the joint fixed space of the listed words."""
        d = self.dimension
        stacked = None
        for w in ws:
            block = self.action(w) - RationalMatrix.identity(d)
            stacked = block if stacked is None else stacked.vstack(block)
        if stacked is None:
            return d
        return len(nullspace(stacked))


def build_module(rep: Representation, kind: str) -> CoefficientModule:
    return CoefficientModule(rep, kind)


@dataclass
class SplitResult:
    so_part: RationalMatrix
    complement_part: RationalMatrix | tuple[Fraction, ...]


def split_components(x: RationalMatrix, form: QuadraticForm, ambient: str) -> SplitResult:
    """Split along so(Q) (+) complement.

    ``ambient="sl"``: x is (n+1)x(n+1) traceless; so part (x - Q^-1 x^T Q)/2,
    complement (x + Q^-1 x^T Q)/2 (Q-self-adjoint).

    ``ambient="so_ext"``: x is (n+2)x(n+2) in so(Q + 1); so part is the
    top-left block, complement is the first n+1 entries of the last column.
    """
    if ambient == "sl":
        if x.shape != (form.size, form.size):
            raise ValueError(f"expected {form.size}x{form.size} input")
        if x.trace() != 0:
            raise ValueError("sl ambient requires a traceless matrix")
        sigma = form.inverse * x.transpose() * form.matrix
        half = Fraction(1, 2)
        return SplitResult((x - sigma).scale(half), (x + sigma).scale(half))
    if ambient == "so_ext":
        big = form.extend_by_one()
        if x.shape != (big.size, big.size):
            raise ValueError(f"expected {big.size}x{big.size} input")
        if not (x.transpose() * big.matrix + big.matrix * x).is_zero():
            raise ValueError("input is not in so(Q + 1)")
        n1 = form.size
        so_part = x.submatrix(range(n1), range(n1))
        complement = tuple(x[i, n1] for i in range(n1))
        return SplitResult(so_part, complement)
    raise ValueError(f"unknown ambient {ambient!r}")
