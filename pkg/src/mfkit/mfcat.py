"""The category of matrix factorizations of w at the tower's MID level.

Objects are pairs of matrices (phi, psi) with psi@phi and phi@psi both
equal to w times the identity. Morphisms are pairs (f, g) making both
squares commute; homotopies are diagonal pairs (s, t). The module
provides suspension, direct sums, mapping cones with their natural
inclusion and projection, duals, and cokernel presentations over the
deep quotient.

Every constructor verifies the defining identities entrywise in normal
form and reports the first failing entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AxiomViolation,
    CommutationViolation,
    DimensionMismatch,
    EndpointMismatch,
    HomotopyViolation,
    LevelMismatch,
    TowerMismatch,
    VerificationFailure,
)
from .poly import Polynomial, format_canonical
from .tower import Level, RingMatrix, RingTower, det


def _first_diff(found: RingMatrix, expected: RingMatrix):
    """Position and values of the first entry where the matrices differ."""
    for i in range(found.nrows):
        for j in range(found.ncols):
            if found.entries[i][j] != expected.entries[i][j]:
                return i, j, expected.entries[i][j], found.entries[i][j]
    return None


class MatrixFactorization:
    """A verified matrix factorization of the tower element w.

    phi maps the rank_f free module into the rank_g one (a rank_g x
    rank_f matrix); psi maps back. Construction checks both axioms and
    the forced rank equality.
    """

    __slots__ = ("tower", "phi", "psi")

    def __init__(self, phi: RingMatrix, psi: RingMatrix):
        if phi.tower is not psi.tower:
            raise TowerMismatch("phi and psi from different towers")
        tower = phi.tower
        if phi.level != Level.MID or psi.level != Level.MID:
            raise LevelMismatch(
                f"factorization matrices must be MID level, got {phi.level.name}/{psi.level.name}"
            )
        if phi.nrows != psi.ncols or phi.ncols != psi.nrows:
            raise DimensionMismatch(
                f"phi is {phi.nrows}x{phi.ncols} but psi is {psi.nrows}x{psi.ncols}"
            )
        self.tower = tower
        self.phi = phi
        self.psi = psi
        self._verify()

    @property
    def rank_f(self) -> int:
        return self.phi.ncols

    @property
    def rank_g(self) -> int:
        return self.phi.nrows

    def _verify(self):
        tower = self.tower
        w_id_f = RingMatrix.identity(tower, Level.MID, self.rank_f).scale(tower.w)
        w_id_g = RingMatrix.identity(tower, Level.MID, self.rank_g).scale(tower.w)
        diff = _first_diff(self.psi @ self.phi, w_id_f)
        if diff is not None:
            i, j, exp, found = diff
            raise AxiomViolation(
                "psi@phi", i, j,
                format_canonical(exp, tower.order), format_canonical(found, tower.order),
            )
        diff = _first_diff(self.phi @ self.psi, w_id_g)
        if diff is not None:
            i, j, exp, found = diff
            raise AxiomViolation(
                "phi@psi", i, j,
                format_canonical(exp, tower.order), format_canonical(found, tower.order),
            )
        if self.rank_f != self.rank_g:
            raise AxiomViolation(
                "rank", 0, 0, f"rank_f == rank_g", f"{self.rank_f} != {self.rank_g}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixFactorization):
            return NotImplemented
        return self.phi == other.phi and self.psi == other.psi

    __hash__ = None

    def __repr__(self) -> str:
        return f"MF(rank {self.rank_f}; phi={self.phi.format_rows()}; psi={self.psi.format_rows()})"


def verify_mf(phi: RingMatrix, psi: RingMatrix) -> MatrixFactorization:
    """Validate a candidate pair; raises AxiomViolation with the first
    offending entry, or returns the verified object."""
    return MatrixFactorization(phi, psi)


class MfMorphism:
    """A verified morphism (f, g) between matrix factorizations."""

    __slots__ = ("source", "target", "f", "g")

    def __init__(self, source: MatrixFactorization, target: MatrixFactorization,
                 f: RingMatrix, g: RingMatrix):
        if source.tower is not target.tower:
            raise TowerMismatch("source and target from different towers")
        if f.nrows != target.rank_f or f.ncols != source.rank_f:
            raise DimensionMismatch(
                f"f must be {target.rank_f}x{source.rank_f}, got {f.nrows}x{f.ncols}"
            )
        if g.nrows != target.rank_g or g.ncols != source.rank_g:
            raise DimensionMismatch(
                f"g must be {target.rank_g}x{source.rank_g}, got {g.nrows}x{g.ncols}"
            )
        self.source = source
        self.target = target
        self.f = f
        self.g = g
        self._verify()

    def _verify(self):
        diff = _first_diff(self.g @ self.source.phi, self.target.phi @ self.f)
        if diff is not None:
            i, j, exp, found = diff
            raise CommutationViolation(
                f"g@phi1 != phi2@f at entry ({i},{j})", location=f"g@phi1@({i},{j})"
            )
        diff = _first_diff(self.f @ self.source.psi, self.target.psi @ self.g)
        if diff is not None:
            i, j, exp, found = diff
            raise CommutationViolation(
                f"f@psi1 != psi2@g at entry ({i},{j})", location=f"f@psi1@({i},{j})"
            )

    @property
    def tower(self) -> RingTower:
        return self.source.tower

    def __eq__(self, other) -> bool:
        if not isinstance(other, MfMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.f == other.f
            and self.g == other.g
        )

    __hash__ = None

    def __add__(self, other: "MfMorphism") -> "MfMorphism":
        if self.source != other.source or self.target != other.target:
            raise EndpointMismatch("morphism sum needs equal endpoints")
        return MfMorphism(self.source, self.target, self.f + other.f, self.g + other.g)

    def __sub__(self, other: "MfMorphism") -> "MfMorphism":
        if self.source != other.source or self.target != other.target:
            raise EndpointMismatch("morphism difference needs equal endpoints")
        return MfMorphism(self.source, self.target, self.f - other.f, self.g - other.g)

    def __repr__(self) -> str:
        return f"MfMorphism(f={self.f.format_rows()}, g={self.g.format_rows()})"


def verify_morphism(source, target, f, g) -> MfMorphism:
    return MfMorphism(source, target, f, g)


def identity_morphism(a: MatrixFactorization) -> MfMorphism:
    return MfMorphism(
        a, a,
        RingMatrix.identity(a.tower, Level.MID, a.rank_f),
        RingMatrix.identity(a.tower, Level.MID, a.rank_g),
    )


def zero_morphism(source: MatrixFactorization, target: MatrixFactorization) -> MfMorphism:
    return MfMorphism(
        source, target,
        RingMatrix.zeros(source.tower, Level.MID, target.rank_f, source.rank_f),
        RingMatrix.zeros(source.tower, Level.MID, target.rank_g, source.rank_g),
    )


def compose_morphisms(second: MfMorphism, first: MfMorphism) -> MfMorphism:
    """second after first."""
    if first.target != second.source:
        raise EndpointMismatch("composition endpoints do not match")
    return MfMorphism(first.source, second.target, second.f @ first.f, second.g @ first.g)


class MfHomotopy:
    """A verified homotopy (s, t) between parallel morphisms.

    The defining identities are
        f - f' == s@phi1 + psi2@t
        g - g' == t@psi1 + phi2@s
    """

    __slots__ = ("theta", "theta_prime", "s", "t")

    def __init__(self, theta: MfMorphism, theta_prime: MfMorphism,
                 s: RingMatrix, t: RingMatrix):
        if theta.source != theta_prime.source or theta.target != theta_prime.target:
            raise EndpointMismatch("homotopy needs parallel morphisms")
        src, tgt = theta.source, theta.target
        if s.nrows != tgt.rank_f or s.ncols != src.rank_g:
            raise DimensionMismatch(
                f"s must be {tgt.rank_f}x{src.rank_g}, got {s.nrows}x{s.ncols}"
            )
        if t.nrows != tgt.rank_g or t.ncols != src.rank_f:
            raise DimensionMismatch(
                f"t must be {tgt.rank_g}x{src.rank_f}, got {t.nrows}x{t.ncols}"
            )
        self.theta = theta
        self.theta_prime = theta_prime
        self.s = s
        self.t = t
        self._verify()

    def _verify(self):
        src, tgt = self.theta.source, self.theta.target
        lhs_f = self.theta.f - self.theta_prime.f
        rhs_f = self.s @ src.phi + tgt.psi @ self.t
        diff = _first_diff(lhs_f, rhs_f)
        if diff is not None:
            i, j, _, _ = diff
            raise HomotopyViolation(
                f"f - f' != s@phi1 + psi2@t at entry ({i},{j})",
                location=f"f-identity@({i},{j})",
            )
        lhs_g = self.theta.g - self.theta_prime.g
        rhs_g = self.t @ src.psi + tgt.phi @ self.s
        diff = _first_diff(lhs_g, rhs_g)
        if diff is not None:
            i, j, _, _ = diff
            raise HomotopyViolation(
                f"g - g' != t@psi1 + phi2@s at entry ({i},{j})",
                location=f"g-identity@({i},{j})",
            )

    def __repr__(self) -> str:
        return f"MfHomotopy(s={self.s.format_rows()}, t={self.t.format_rows()})"


def verify_homotopy(theta, theta_prime, s, t) -> MfHomotopy:
    return MfHomotopy(theta, theta_prime, s, t)


def suspend(a: MatrixFactorization) -> MatrixFactorization:
    """The suspension: swap the modules and negate both maps."""
    return MatrixFactorization(-a.psi, -a.phi)


def direct_sum(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    if a.tower is not b.tower:
        raise TowerMismatch("direct sum needs a common tower")
    za = RingMatrix.zeros
    phi = RingMatrix.block(
        [[a.phi, za(a.tower, Level.MID, a.rank_g, b.rank_f)],
         [za(a.tower, Level.MID, b.rank_g, a.rank_f), b.phi]]
    )
    psi = RingMatrix.block(
        [[a.psi, za(a.tower, Level.MID, a.rank_f, b.rank_g)],
         [za(a.tower, Level.MID, b.rank_f, a.rank_g), b.psi]]
    )
    return MatrixFactorization(phi, psi)


def mapping_cone(theta: MfMorphism):
    """The cone of a morphism with its natural maps.

    Returns (cone, include, project): include embeds the target, project
    maps onto the suspended source, and project@include == 0.
    """
    src, tgt = theta.source, theta.target
    tower = theta.tower
    z = RingMatrix.zeros
    cone_phi = RingMatrix.block(
        [[-src.psi, z(tower, Level.MID, src.rank_f, tgt.rank_f)],
         [theta.g, tgt.phi]]
    )
    cone_psi = RingMatrix.block(
        [[-src.phi, z(tower, Level.MID, src.rank_g, tgt.rank_g)],
         [theta.f, tgt.psi]]
    )
    cone = MatrixFactorization(cone_phi, cone_psi)

    inc_f = RingMatrix.block(
        [[z(tower, Level.MID, src.rank_g, tgt.rank_f)],
         [RingMatrix.identity(tower, Level.MID, tgt.rank_f)]]
    )
    inc_g = RingMatrix.block(
        [[z(tower, Level.MID, src.rank_f, tgt.rank_g)],
         [RingMatrix.identity(tower, Level.MID, tgt.rank_g)]]
    )
    include = MfMorphism(tgt, cone, inc_f, inc_g)

    proj_f = RingMatrix.block(
        [[RingMatrix.identity(tower, Level.MID, src.rank_g),
          z(tower, Level.MID, src.rank_g, tgt.rank_f)]]
    )
    proj_g = RingMatrix.block(
        [[RingMatrix.identity(tower, Level.MID, src.rank_f),
          z(tower, Level.MID, src.rank_f, tgt.rank_g)]]
    )
    project = MfMorphism(cone, suspend(src), proj_f, proj_g)
    return cone, include, project


def dual_mf(a: MatrixFactorization) -> MatrixFactorization:
    """The dual factorization: transposed matrices in swapped roles."""
    return MatrixFactorization(a.psi.transpose(), a.phi.transpose())


@dataclass
class CokerPresentation:
    """Presentation of the cokernel of psi over the deep quotient.

    `presentation` is psi reduced to the QUOT level; `annihilation_cert`
    is phi, which witnesses that w times the identity factors through
    psi, so w kills the cokernel. `det_product` is det(phi)*det(psi) at
    MID level; it certifies injectivity of psi since it is a unit
    multiple of a power of the non-zerodivisor w.
    """

    mf: MatrixFactorization
    presentation: RingMatrix
    annihilation_cert: RingMatrix
    det_product: Polynomial
    w_power: int


def coker_presentation(a: MatrixFactorization) -> CokerPresentation:
    tower = a.tower
    presentation = a.psi.reduce_to(Level.QUOT)
    w_id = RingMatrix.identity(tower, Level.MID, a.rank_f).scale(tower.w)
    if (a.psi @ a.phi) != w_id:
        raise VerificationFailure("annihilation certificate failed: psi@phi != w*1")
    d = tower.normal_form(det(a.phi) * det(a.psi), Level.MID)
    w_pow = tower.normal_form(tower.w ** a.rank_f, Level.MID)
    if d != w_pow and d != -w_pow:
        raise VerificationFailure(
            "determinant certificate failed: det(phi)*det(psi) is not +/- w^rank"
        )
    return CokerPresentation(a, presentation, a.phi, d, a.rank_f)
