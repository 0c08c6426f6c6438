"""Buchberger engine over a polynomial ring.

Provides reduced Groebner bases (deterministic: normal pair selection
with index tie-break), normal forms for equality in quotient rings,
extended division with cofactor tracking, exact division by a
non-zerodivisor modulo an ideal, and the Krull dimension of a
homogeneous quotient.

Representation tracking: `buchberger_with_reps` carries, for every
basis element, its expression as a combination of the input generators.
That is what makes exact division by a ring element possible: divide
against the combined basis of (ideal generators + the element) and read
off the element's cofactor.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NotDivisible, NotHomogeneous, VariableMismatch
from .linalg import solve_linear
from .poly import (
    MonomialOrder,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal with a chosen monomial order."""

    generators: tuple[Polynomial, ...]
    order: MonomialOrder

    def __post_init__(self):
        rings = {g.ring for g in self.generators if not g.is_zero()}
        if len(rings) > 1:
            raise VariableMismatch("ideal generators live in different rings")


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis; `reduced` marks the unique reduced form."""

    polys: tuple[Polynomial, ...]
    order: MonomialOrder
    reduced: bool = True

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


@dataclass(frozen=True)
class ReductionTrace:
    """Result of extended division: input = remainder + sum(cof*basis)."""

    remainder: Polynomial
    cofactors: tuple[Polynomial, ...]


def divide_full(p: Polynomial, divisors, order: MonomialOrder):
    """Multivariate long division of p by an ordered list of divisors.

    Returns (remainder, cofactors). The remainder contains no term
    divisible by any divisor's leading monomial; divisor selection is by
    list index, so the result is deterministic.
    """
    ring = p.ring
    field = ring.field
    lms = [d.leading_monomial(order) for d in divisors]
    lcs = [d.terms[lm] for d, lm in zip(divisors, lms)]
    work = dict(p.terms)
    rem: dict = {}
    cofs = [ring.zero() for _ in divisors]
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for i, lm in enumerate(lms):
            if mono_divides(lm, m):
                q_mono = mono_div(m, lm)
                q_coeff = field.div(c, lcs[i])
                cofs[i] = cofs[i] + ring.monomial(q_mono, q_coeff)
                for dm, dc in divisors[i].terms.items():
                    if dm == lm:
                        continue
                    t = mono_mul(dm, q_mono)
                    s = field.sub(work.get(t, field.zero), field.mul(dc, q_coeff))
                    if s == field.zero:
                        work.pop(t, None)
                    else:
                        work[t] = s
                break
        else:
            rem[m] = c
    return Polynomial(ring, rem), cofs


def normal_form(p: Polynomial, basis: GroebnerBasis) -> Polynomial:
    """Canonical remainder of p modulo the basis; zero iff p is a member."""
    if p.is_zero() or not basis.polys:
        return p
    rem, _ = divide_full(p, basis.polys, basis.order)
    return rem


def reduce_with_cofactors(p: Polynomial, basis: GroebnerBasis) -> ReductionTrace:
    if not basis.polys:
        return ReductionTrace(p, ())
    rem, cofs = divide_full(p, basis.polys, basis.order)
    return ReductionTrace(rem, tuple(cofs))


def _spair(fi, fj, order):
    """S-polynomial data for monic fi, fj: (spoly, mult_i, mult_j) with
    spoly = mult_i*fi - mult_j*fj."""
    lmi = fi.leading_monomial(order)
    lmj = fj.leading_monomial(order)
    l = mono_lcm(lmi, lmj)
    ring = fi.ring
    ui = ring.monomial(mono_div(l, lmi))
    uj = ring.monomial(mono_div(l, lmj))
    return ui * fi - uj * fj, ui, uj


def buchberger_with_reps(generators, order: MonomialOrder):
    """Reduced Groebner basis with representation tracking.

    Returns (basis polys, reps) where reps[i] is a tuple of cofactors,
    one per input generator, with basis[i] == sum_j reps[i][j] * gen[j]
    exactly. Deterministic: normal selection strategy (smallest pair lcm
    in the order) with (i, j) tie-break, coprime-criterion skip.
    """
    gens = [g for g in generators]
    if not gens:
        return [], []
    ring = gens[0].ring
    field = ring.field

    polys: list[Polynomial] = []
    reps: list[list[Polynomial]] = []

    def unit_rep(j, scale):
        row = [ring.zero() for _ in gens]
        row[j] = ring.const(scale)
        return row

    for j, g in enumerate(gens):
        if g.is_zero():
            continue
        lc = g.leading_coefficient(order)
        inv = field.inv(lc)
        polys.append(g.scale(inv))
        reps.append(unit_rep(j, inv))

    def reduce_tracked(p, rep):
        if p.is_zero():
            return p, rep
        rem, cofs = divide_full(p, polys, order)
        new_rep = list(rep)
        for c, r in zip(cofs, reps):
            if c.is_zero():
                continue
            for j in range(len(gens)):
                new_rep[j] = new_rep[j] - c * r[j]
        return rem, new_rep

    pairs = {(i, j) for i, j in combinations(range(len(polys)), 2)}
    while pairs:
        best = min(
            pairs,
            key=lambda ij: (
                order.key(
                    mono_lcm(
                        polys[ij[0]].leading_monomial(order),
                        polys[ij[1]].leading_monomial(order),
                    )
                ),
                ij,
            ),
        )
        pairs.discard(best)
        i, j = best
        lmi = polys[i].leading_monomial(order)
        lmj = polys[j].leading_monomial(order)
        if mono_lcm(lmi, lmj) == mono_mul(lmi, lmj):
            continue  # coprime leading monomials: spoly reduces to zero
        s, ui, uj = _spair(polys[i], polys[j], order)
        rep_s = [ui * a - uj * b for a, b in zip(reps[i], reps[j])]
        r, rep_r = reduce_tracked(s, rep_s)
        if r.is_zero():
            continue
        inv = field.inv(r.leading_coefficient(order))
        polys.append(r.scale(inv))
        reps.append([a.scale(inv) for a in rep_r])
        k = len(polys) - 1
        pairs.update((t, k) for t in range(k))

    # Minimalize: drop elements whose leading monomial is divisible by
    # another element's leading monomial.
    order_idx = sorted(range(len(polys)), key=lambda i: order.key(polys[i].leading_monomial(order)))
    kept: list[int] = []
    kept_lms: list = []
    for i in order_idx:
        lm = polys[i].leading_monomial(order)
        if any(mono_divides(l, lm) for l in kept_lms):
            continue
        kept.append(i)
        kept_lms.append(lm)
    polys = [polys[i] for i in kept]
    reps = [reps[i] for i in kept]

    # Interreduce tails until stable.
    changed = True
    while changed:
        changed = False
        for i in range(len(polys)):
            others = polys[:i] + polys[i + 1 :]
            other_reps = reps[:i] + reps[i + 1 :]
            if not others:
                continue
            rem, cofs = divide_full(polys[i], others, order)
            if rem == polys[i]:
                continue
            changed = True
            new_rep = list(reps[i])
            for c, r in zip(cofs, other_reps):
                if c.is_zero():
                    continue
                for j in range(len(gens)):
                    new_rep[j] = new_rep[j] - c * r[j]
            inv = field.inv(rem.leading_coefficient(order))
            polys[i] = rem.scale(inv)
            reps[i] = [a.scale(inv) for a in new_rep]

    final = sorted(
        range(len(polys)), key=lambda i: order.key(polys[i].leading_monomial(order)), reverse=True
    )
    return [polys[i] for i in final], [tuple(reps[i]) for i in final]


def buchberger_basis(ideal: Ideal) -> GroebnerBasis:
    """The unique reduced Groebner basis of the ideal under its order."""
    polys, _ = buchberger_with_reps(list(ideal.generators), ideal.order)
    return GroebnerBasis(tuple(polys), ideal.order, reduced=True)


class DivisionOracle:
    """Exact division by a non-zerodivisor w modulo a fixed ideal.

    Built once per (ideal, w); division then costs a single extended
    reduction against the combined basis of (ideal generators + w).
    """

    def __init__(self, mid_basis: GroebnerBasis, w: Polynomial):
        if w.is_zero():
            raise NotDivisible("cannot divide by zero")
        self.order = mid_basis.order
        self.mid_basis = mid_basis
        gens = list(mid_basis.polys) + [w]
        polys, reps = buchberger_with_reps(gens, self.order)
        self.combined = GroebnerBasis(tuple(polys), self.order, reduced=True)
        self.w_cofactors = [rep[-1] for rep in reps]

    def divide(self, p: Polynomial) -> Polynomial:
        """q with p == w*q modulo the ideal, in normal form; unique there."""
        if p.is_zero():
            return p
        rem, cofs = divide_full(p, self.combined.polys, self.order)
        if not rem.is_zero():
            raise NotDivisible(
                f"{p!r} is not divisible modulo the ideal (remainder {rem!r})"
            )
        q = p.ring.zero()
        for c, wc in zip(cofs, self.w_cofactors):
            if not c.is_zero() and not wc.is_zero():
                q = q + c * wc
        return normal_form(q, self.mid_basis)


def exact_divide_by_nzd(p: Polynomial, w: Polynomial, mid_basis: GroebnerBasis) -> Polynomial:
    """q in normal form with p == w*q modulo ideal(mid_basis).

    Raises NotDivisible when p is not in (w) + ideal(mid_basis). The
    caller asserts that w is a non-zerodivisor modulo the ideal, which
    makes q unique modulo the ideal.
    """
    return DivisionOracle(mid_basis, w).divide(p)


def _independent_sets_max(lead_supports, nvars: int) -> int:
    """Largest variable subset meeting no leading-monomial support."""
    best = -1
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            sub = set(subset)
            if all(not s <= sub for s in lead_supports):
                return size
    return best


def quotient_dimension(ideal: Ideal) -> int:
    """Krull dimension of ring/ideal for a homogeneous ideal.

    Computed combinatorially from the leading-term ideal of the reduced
    basis (maximal independent variable set). Returns the number of
    variables for the zero ideal and -1 for the unit ideal.
    """
    if not ideal.generators:
        raise ValueError("ambient ring unknown; include at least a zero generator")
    gens = [g for g in ideal.generators if not g.is_zero()]
    if not gens:
        return ideal.generators[0].ring.nvars
    for g in gens:
        if not g.is_homogeneous():
            raise NotHomogeneous(f"generator {g!r} is not homogeneous")
    basis = buchberger_basis(Ideal(tuple(gens), ideal.order))
    nvars = gens[0].ring.nvars
    supports = []
    for b in basis.polys:
        lm = b.leading_monomial(ideal.order)
        supports.append({i for i, e in enumerate(lm) if e > 0})
    return _independent_sets_max(supports, nvars)


def membership_oracle(p: Polynomial, generators, max_cof_degree: int) -> bool:
    """Brute-force ideal membership via linear algebra.

    Solves p = sum a_i g_i with deg a_i <= max_cof_degree by equating
    coefficients, independently of any Groebner machinery. Intended as
    a test oracle on small instances.
    """
    gens = [g for g in generators if not g.is_zero()]
    if p.is_zero():
        return True
    if not gens:
        return False
    ring = p.ring
    field = ring.field
    monos = list(_monomials_up_to(ring.nvars, max_cof_degree))
    columns = []
    target_monos = set(p.terms)
    for g in gens:
        for m in monos:
            prod = g.mul_term(m, field.one)
            columns.append(prod)
            target_monos.update(prod.terms)
    rows_index = sorted(target_monos)
    a = [[col.terms.get(m, field.zero) for col in columns] for m in rows_index]
    b = [p.terms.get(m, field.zero) for m in rows_index]
    return solve_linear(a, b, field) is not None


def _monomials_up_to(nvars: int, max_degree: int):
    for d in range(max_degree + 1):
        yield from _degree_monomials(nvars, d)


def _degree_monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree, lexicographically."""
    if nvars == 1:
        yield (degree,)
        return
    for e in range(degree, -1, -1):
        for rest in _degree_monomials(nvars - 1, degree - e):
            yield (e,) + rest


def monomials_of_degree(nvars: int, degree: int) -> list:
    return list(_degree_monomials(nvars, degree))
