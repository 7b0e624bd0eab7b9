"""The cohomology engine: Z^1, B^1, H^1, H^0, parabolic and cuspidal
subspaces, and class-span dimensions, all via Fox Jacobians and exact ranks.

A cocycle is a map c with c(uv) = c(u) + u.c(v), stored by its values on the
generators as one stacked (g*d)-vector. Coboundaries are c(w) = (I - w).a.
The parabolic subspace PZ^1 imposes c(w) in im(I - w) for listed words (one
auxiliary vector per word); the cuspidal subspace shares one auxiliary vector
per cusp across its meridian and longitude.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import (RationalMatrix, in_column_space, nullspace, rank_of_vectors,
                     rref_rank)
from .modules import CoefficientModule
from .reps import is_parabolic
from .words import Presentation, Word

MODES = ("none", "per_element", "per_subgroup")


class CocycleSpace:
    """Fox Jacobian of a presentation with module coefficients, plus exact
    bases of the cocycle and coboundary spaces."""

    def __init__(self, presentation: Presentation, module: CoefficientModule):
        self.presentation = presentation
        self.module = module
        self.d = module.dimension
        self.g = len(presentation.generators)
        self.jacobian = self._build_jacobian()
        self.z1_basis = nullspace(self.jacobian)
        self._coboundary_map = self._build_coboundary_map()
        red, rank, pivots = rref_rank(self._coboundary_map)
        self.b1_basis = [self._coboundary_map.col(p) for p in pivots]
        self.dim_z1 = len(self.z1_basis)
        self.dim_b1 = rank
        self.dim_h0 = self.d - rank
        self.dim_h1 = self.dim_z1 - self.dim_b1

    def _build_jacobian(self) -> RationalMatrix:
        d, g = self.module.dimension, len(self.presentation.generators)
        rows = RationalMatrix.zeros(0, g * d)
        for r in self.presentation.relators:
            rows = rows.vstack(self.word_row(r))
        return rows

    def _build_coboundary_map(self) -> RationalMatrix:
        """(g*d) x d matrix whose columns span B^1: a -> ((I - x_i).a)_i."""
        d = self.d
        ident = RationalMatrix.identity(d)
        out = None
        for gen in self.presentation.generators:
            block = ident - self.module.action(Word.generator(gen))
            out = block if out is None else out.vstack(block)
        return out

    def word_row(self, w: Word) -> RationalMatrix:
        """d x (g*d) matrix evaluating c(w) from generator values: block i is
        the action of the Fox derivative dw/dx_i.

        Walks the word once, accumulating prefix actions (every Fox term is a
        prefix, possibly times one inverse letter).
        """
        d = self.d
        gen_index = {g: k for k, g in enumerate(self.presentation.generators)}
        blocks = {k: RationalMatrix.zeros(d, d) for k in range(self.g)}
        prefix = RationalMatrix.identity(d)
        for g, e in w.letters:
            act = self.module.action(Word(((g, e),)))
            k = gen_index[g]
            if e == 1:
                blocks[k] = blocks[k] + prefix
            else:
                blocks[k] = blocks[k] - prefix * act
            prefix = prefix * act
        out = blocks[0]
        for k in range(1, self.g):
            out = out.hstack(blocks[k])
        return out

    def coboundary(self, alpha) -> tuple[Fraction, ...]:
        return self._coboundary_map.matvec(alpha)

    def is_cocycle(self, c) -> bool:
        return all(v == 0 for v in self.jacobian.matvec(c))

    def in_b1(self, c) -> bool:
        stacked = [list(b) for b in self.b1_basis]
        return rank_of_vectors(stacked + [list(c)]) == self.dim_b1

    def parabolic_kernel_dim(self, word_groups) -> int:
        """Dimension of {c in Z^1 : for each group there is one alpha with
        c(w) = (I - w).alpha for every w in the group}.

        Solvability of the per-group system A alpha = rhs(c) is equivalent to
        rhs(c) being killed by a basis of the left kernel of A, which turns
        the existential into exact linear conditions on c.
        """
        d, g = self.d, self.g
        ident = RationalMatrix.identity(d)
        condition_rows: list[list[Fraction]] = []
        for group in word_groups:
            a_blocks = None
            r_blocks = None
            for w in group:
                ablock = ident - self.module.action(w)
                rblock = self.word_row(w)
                a_blocks = ablock if a_blocks is None else a_blocks.vstack(ablock)
                r_blocks = rblock if r_blocks is None else r_blocks.vstack(rblock)
            for n in nullspace(a_blocks.transpose()):
                # n^T (rhs of the group) must vanish: one row over c
                row = [Fraction(0)] * (g * d)
                for i, ni in enumerate(n):
                    if ni:
                        for j, rij in enumerate(r_blocks.row(i)):
                            if rij:
                                row[j] += ni * rij
                condition_rows.append(row)
        if not condition_rows:
            return self.dim_z1
        cond = RationalMatrix.from_rows(condition_rows)
        restricted = [cond.matvec(z) for z in self.z1_basis]
        # rows of the restricted map are indexed by conditions; rank over Z^1
        return self.dim_z1 - rank_of_vectors(restricted)

    def cuspidal_defect(self, c) -> list[bool]:
        """Per cusp: does one alpha satisfy the coboundary condition on both
        the meridian and the longitude of the restricted cocycle?"""
        d = self.d
        ident = RationalMatrix.identity(d)
        out = []
        for mu, lam in self.presentation.cusps:
            a = (ident - self.module.action(mu)).vstack(ident - self.module.action(lam))
            rhs = list(self.word_row(mu).matvec(c)) + list(self.word_row(lam).matvec(c))
            out.append(in_column_space(a, rhs) is not None)
        return out


def cocycle_eval(space: CocycleSpace, c, w: Word) -> tuple[Fraction, ...]:
    """The unique cocycle extension of generator values c, evaluated at w."""
    c = list(c)
    if len(c) != space.g * space.d:
        raise ValueError(f"expected length {space.g * space.d}, got {len(c)}")
    return space.word_row(w).matvec(c)


def class_span_dim(space: CocycleSpace, cocycles) -> int:
    """Dimension of the span in H^1 of the listed cocycles' classes."""
    vecs = []
    for c in cocycles:
        c = list(c)
        if not space.is_cocycle(c):
            raise ValueError("vector is not a cocycle (fails the Fox-Jacobian kernel)")
        vecs.append(c)
    stacked = [list(b) for b in space.b1_basis] + vecs
    return rank_of_vectors(stacked) - space.dim_b1


def is_cuspidal(space: CocycleSpace, c) -> bool:
    return all(space.cuspidal_defect(list(c)))


def default_parabolic_words(presentation: Presentation) -> list[Word]:
    """Per cusp: meridian, longitude, and their product.

    The product is needed when the meridian and longitude translations are
    orthogonal, in which case conditions on the pair alone are strictly weaker
    than the subgroup condition (the Borromean fixture is exactly this case).
    """
    words = []
    for mu, lam in presentation.cusps:
        words.extend([mu, lam, mu * lam])
    return words


@dataclass
class CohomologyReport:
    dim_z1: int
    dim_b1: int
    dim_h1: int
    dim_h0: int
    mode: str
    dim_pz1: int | None = None
    dim_ph1: int | None = None
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"dimZ1": self.dim_z1, "dimB1": self.dim_b1, "dimH1": self.dim_h1,
               "dimH0": self.dim_h0, "mode": self.mode}
        if self.dim_pz1 is not None:
            out["dimPZ1"] = self.dim_pz1
            out["dimPH1"] = self.dim_ph1
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def h1_report(presentation: Presentation, module: CoefficientModule,
              parabolic_words=None, mode: str = "none",
              space: CocycleSpace | None = None) -> CohomologyReport:
    """Compute all cohomology dimensions for the module.

    ``mode="per_element"`` imposes c(w) in im(I - w) word by word (defaults to
    meridians, longitudes, and their products over all cusps);
    ``mode="per_subgroup"`` shares one auxiliary vector per cusp pair.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if space is None:
        space = CocycleSpace(presentation, module)
    report = CohomologyReport(space.dim_z1, space.dim_b1, space.dim_h1,
                              space.dim_h0, mode)
    if mode == "none":
        return report

    if mode == "per_element":
        if parabolic_words is None:
            parabolic_words = default_parabolic_words(presentation)
        groups = [[w] for w in parabolic_words]
        flat = list(parabolic_words)
    else:
        if not presentation.cusps:
            raise ValueError("per_subgroup mode needs cusp data")
        groups = [[mu, lam] for mu, lam in presentation.cusps]
        flat = [w for pair in presentation.cusps for w in pair]

    for w in flat:
        if not is_parabolic(module.rep.evaluate(w)):
            report.warnings.append(f"word {w} is not parabolic under the representation")

    report.dim_pz1 = space.parabolic_kernel_dim(groups)
    report.dim_ph1 = report.dim_pz1 - space.dim_b1
    return report


def peripheral_invariant_dims(presentation: Presentation,
                              module: CoefficientModule) -> list[int]:
    """Per cusp: dimension of the joint invariants of the meridian and
    longitude actions (the H^0 of the cusp subgroup)."""
    return [module.invariants_dim([mu, lam]) for mu, lam in presentation.cusps]


def scannell_check(report: CohomologyReport, peripheral_h0: int) -> bool:
    """dim H^1 - dim PH^1 must equal the total peripheral H^0."""
    if report.dim_ph1 is None:
        raise ValueError("report has no parabolic dimensions")
    return report.dim_h1 - report.dim_ph1 == peripheral_h0
