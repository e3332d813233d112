"""Pointless cubic surfaces over Q_p, built from norm forms of lines.

Construction: pick a line x + b*y + c*z over GF(p^3) whose coefficients
are linearly independent over GF(p) (equivalently, the line misses every
point of P^2(GF(p))), multiply its three Frobenius conjugates into a cubic
norm form with GF(p) coefficients and no GF(p)-zeros, lift each
coefficient to its representative in [0, p), and add p*w^3.  The result
reduces mod p to the norm form itself, so the only residue point is
(1:0:0:0); at an integral point over it, the w^3 term has valuation
exactly 1 while every other term has valuation >= 2, so no Q_p-point
exists.

Everything is exact integer valuation arithmetic on primitive points: no
p-adic approximations anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .counting import enumerate_projective_points
from .errors import ConstructionFailed, DpkError, LineHasRationalPoint
from .finitefield import QQ, FiniteField, is_prime
from .groebner import is_smooth_surface
from .poly import MultiPoly, reduce_mod_p

VARS = ("w", "x", "y", "z")
AUX_SMOOTHNESS_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


@dataclass
class PAdicCubic:
    p: int
    form: MultiPoly  # integer coefficients, variables (w, x, y, z)
    provenance: dict | None = None

    def __post_init__(self):
        if self.form.is_zero():
            raise DpkError("form must be nonzero")
        for c in self.form.terms.values():
            if getattr(c, "denominator", 1) != 1:
                raise DpkError("form must have integer coefficients")

    def to_json(self):
        out = {
            "schema": 1,
            "p": self.p,
            "form": self.form.to_string(),
            "equation": self.form.to_display(),
        }
        if self.provenance:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, data):
        form = MultiPoly.from_string(QQ, VARS, data["form"])
        return cls(p=data["p"], form=form, provenance=data.get("provenance"))


@dataclass
class PointlessCertificate:
    residue_points: list
    valuation_argument: dict
    verdict: str  # "NoQpPoints" | "Inconclusive"
    smoothness_prime: int | None = dc_field(default=None)

    def to_json(self):
        return {
            "residue_points": [list(p) for p in self.residue_points],
            "valuation_argument": self.valuation_argument,
            "verdict": self.verdict,
            "smoothness_prime": self.smoothness_prime,
        }


def construct_norm_form(p: int, beta: int, gamma: int, field3: FiniteField) -> MultiPoly:
    """Product of the three Frobenius conjugates of x + beta*y + gamma*z.

    beta, gamma are encoded elements of GF(p^3).  Raises when 1, beta,
    gamma are linearly dependent over GF(p), i.e. when the line meets
    P^2(GF(p)).  The output lives over GF(p) and has no GF(p)-zeros in
    P^2, which is verified exhaustively.
    """
    if field3.p != p or field3.k != 3:
        raise DpkError("field3 must be GF(p^3)")
    rows = [field3.coeffs(field3.one), field3.coeffs(beta), field3.coeffs(gamma)]
    from .intlinalg import det

    if det([list(r) for r in rows]) % p == 0:
        raise LineHasRationalPoint(
            "1, beta, gamma are linearly dependent over GF(p); the line meets P^2(GF(p))"
        )
    xyz = ("x", "y", "z")
    prod = MultiPoly.constant(field3, xyz, field3.one)
    b, c = beta, gamma
    for _ in range(3):
        lin = MultiPoly(field3, xyz, {(1, 0, 0): field3.one, (0, 1, 0): b, (0, 0, 1): c})
        prod = prod * lin
        b, c = field3.frobenius(b), field3.frobenius(c)
    base = FiniteField(p)
    terms = {}
    for e, coef in prod.terms.items():
        if not field3.in_prime_field(coef):
            raise DpkError("norm form coefficient escaped the prime field")
        terms[e] = coef
    norm = MultiPoly(base, xyz, terms)
    for pt in enumerate_projective_points(base, (1, 1, 1)):
        if base.is_zero(norm.evaluate(pt)):
            raise LineHasRationalPoint(f"norm form vanishes at {pt} in P^2(GF(p))")
    return norm


@dataclass
class Perturbation:
    """Term c_i * w^i * g_{3-i}(x, y, z) with v(c_i) >= min(1, i).

    The degree-(3, 0) piece must additionally vanish mod p (v(c_0) >= 1
    unless g_3 reduces to zero); without that the residue equation would
    change and the residue analysis would not carry over.
    """

    i: int
    c: int
    g: MultiPoly  # integer coefficients in (x, y, z), homogeneous of degree 3 - i

    def validate(self, p: int):
        if self.i not in (0, 1, 2):
            raise DpkError("perturbation index must be 0, 1 or 2")
        want = 3 - self.i
        if not self.g.is_zero():
            if not self.g.is_homogeneous() or self.g.total_degree() != want:
                raise DpkError(f"g must be homogeneous of degree {want}")
        for coef in self.g.terms.values():
            if getattr(coef, "denominator", 1) != 1:
                raise DpkError("perturbation coefficients must be integers")
        vmin = min(1, self.i)
        if self.c % (p**vmin) != 0:
            raise DpkError(f"v(c_{self.i}) must be >= {vmin}")
        if self.i == 0 and self.c % p != 0:
            if any(int(coef) % p for coef in self.g.terms.values()):
                raise DpkError(
                    "degree-3 perturbation must vanish mod p to preserve the residue points"
                )

    def to_json(self):
        return {"i": self.i, "c": self.c, "g": self.g.to_string()}


def _lift_to_int_poly(f_modp: MultiPoly, extra_var_first: str = "w") -> MultiPoly:
    """Lift GF(p) coefficients to [0, p) integers and prepend the w slot."""
    terms = {}
    for e, c in f_modp.terms.items():
        terms[(0,) + e] = Fraction(int(c))
    return MultiPoly(QQ, VARS, terms)


PAPER_P = 11
PAPER_MODULUS = (9, 2, 0, 1)  # alpha^3 + 2*alpha + 9 = 0, little endian
PAPER_BETA_EXP = 625
PAPER_GAMMA_EXP = 223


def build_pointless_cubic(
    p: int,
    seed: int = 0,
    perturbations: list[Perturbation] | None = None,
    paper_line: bool = False,
    max_tries: int = 200,
) -> PAdicCubic:
    """p*w^3 + lift(norm form), with optional perturbation terms.

    The line is drawn from the seeded generator and retried until both the
    pointlessness certificate and an auxiliary-prime smoothness certificate
    pass.  With paper_line=True (p must be 11) the pinned line
    x + a^625 y + a^223 z over GF(11^3), a^3 + 2a + 9 = 0, is used and the
    output is the classical pointless cubic over Q_11.
    """
    if not is_prime(p) or p == 2:
        raise DpkError("p must be an odd prime (the valuation dichotomy needs p != 2)")
    if p**3 > 10**7:
        raise DpkError(f"GF(p^3) enumeration for p={p} is beyond the budget")
    perturbations = list(perturbations or [])
    for pert in perturbations:
        pert.validate(p)
    if paper_line:
        if p != PAPER_P:
            raise DpkError("the pinned line lives over GF(11^3); use p=11")
        field3 = FiniteField(p, 3, modulus=PAPER_MODULUS)
        alpha = field3.element([0, 1, 0])
        candidates = [(field3.pow(alpha, PAPER_BETA_EXP), field3.pow(alpha, PAPER_GAMMA_EXP))]
    else:
        field3 = FiniteField(p, 3)
        rng = random.Random(("pointless", p, seed).__repr__())
        candidates = (
            (rng.randrange(1, field3.q), rng.randrange(1, field3.q)) for _ in range(max_tries)
        )
    attempts = 0
    for beta, gamma in candidates:
        attempts += 1
        try:
            norm = construct_norm_form(p, beta, gamma, field3)
        except LineHasRationalPoint:
            continue
        form = MultiPoly(QQ, VARS, {(3, 0, 0, 0): Fraction(p)}) + _lift_to_int_poly(norm)
        for pert in perturbations:
            g4 = MultiPoly(
                QQ, VARS, {(pert.i,) + e: Fraction(int(c)) for e, c in pert.g.terms.items()}
            )
            form = form + g4.scale(Fraction(pert.c))
        surface = PAdicCubic(
            p=p,
            form=form,
            provenance={
                "p": p,
                "modulus": list(field3.modulus),
                "beta": list(field3.coeffs(beta)),
                "gamma": list(field3.coeffs(gamma)),
                "seed": None if paper_line else seed,
                "paper_line": paper_line,
                "attempts": attempts,
                "lift": "[0,p)",
                "perturbations": [q.to_json() for q in perturbations],
            },
        )
        cert = verify_pointless(surface)
        if cert.verdict != "NoQpPoints":
            continue
        aux = smoothness_prime(surface)
        if aux is None:
            continue
        surface.provenance["smoothness_prime"] = aux
        return surface
    raise ConstructionFailed(f"no valid line found for p={p} after {attempts} attempts")


def smoothness_prime(surface: PAdicCubic) -> int | None:
    """Auxiliary prime whose reduction is smooth, certifying smoothness.

    A projective family over Z with one smooth fiber mod l is smooth in a
    neighborhood, so the Q-fiber (and the Q_p-fiber) is smooth.  Returns
    the first such prime, or None.
    """
    for ell in AUX_SMOOTHNESS_PRIMES:
        fld = FiniteField(ell)
        red = reduce_mod_p(surface.form, fld)
        if red.is_zero() or not red.is_homogeneous() or red.total_degree() != 3:
            continue
        if is_smooth_surface(red):
            return ell
    return None


def _vp(n: int, p: int) -> int:
    n = abs(int(n))
    if n == 0:
        return 10**9  # effectively infinite
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def verify_pointless(surface: PAdicCubic) -> PointlessCertificate:
    """Exact certificate that the cubic has no Q_p-points.

    (i) the reduction mod p has (1:0:0:0) as its only projective zero;
    (ii) the w^3 coefficient has valuation exactly 1 (class 1 mod 3) and
    every other monomial w^a x^b y^c z^d satisfies
    v(coefficient) + b + c + d >= 2, so at a primitive point over the
    residue point the w^3 term dominates everything else.
    Both conditions together exclude all primitive integral points.
    """
    p = surface.p
    fld = FiniteField(p)
    red = reduce_mod_p(surface.form, fld)
    residue_points = []
    if not red.is_zero():
        for pt in enumerate_projective_points(fld, (1, 1, 1, 1)):
            if fld.is_zero(red.evaluate(pt)):
                residue_points.append(pt)
    only_origin = residue_points == [(1, 0, 0, 0)]

    w3 = surface.form.coefficient((3, 0, 0, 0))
    v_w3 = _vp(int(w3), p) if w3 else 10**9
    others_ok = True
    min_other = 10**9
    f_content = 10**9
    for e, c in surface.form.terms.items():
        if e == (3, 0, 0, 0):
            continue
        bound = _vp(int(c), p) + e[1] + e[2] + e[3]
        min_other = min(min_other, bound)
        if e[0] == 0:
            f_content = min(f_content, _vp(int(c), p))
        if bound < 2:
            others_ok = False
    valuations_ok = (v_w3 == 1) and others_ok
    verdict = "NoQpPoints" if (only_origin and valuations_ok) else "Inconclusive"
    return PointlessCertificate(
        residue_points=residue_points,
        valuation_argument={
            "w3_valuation": v_w3 if v_w3 < 10**8 else None,
            "w3_class_mod_3": (v_w3 % 3) if v_w3 < 10**8 else None,
            "xyz_content_valuation_mod_3": (f_content % 3) if f_content < 10**8 else None,
            "other_terms_min_lower_bound": min_other if min_other < 10**8 else None,
        },
        verdict=verdict,
    )


def hensel_oracle(surface: PAdicCubic, chunk: int = 1_000_000) -> list:
    """Independent search for Hensel-liftable points over Z/p^3.

    Enumerates, for every projective zero of the reduction, all lifts mod
    p^3 (the unit coordinate normalized to 1), keeps those where the form
    vanishes mod p^3, and reports the ones whose reduction has a unit
    partial derivative.  A verified pointless surface must yield nothing.
    """
    p = surface.p
    m = p**3
    fld = FiniteField(p)
    red = reduce_mod_p(surface.form, fld)
    partials = [reduce_mod_p(surface.form.derivative(v), fld) for v in VARS]
    zeros = [
        pt
        for pt in enumerate_projective_points(fld, (1, 1, 1, 1))
        if fld.is_zero(red.evaluate(pt))
    ]
    monomials = [(int(c), e) for e, c in surface.form.terms.items()]
    found = []
    for z in zeros:
        unit_idx = next(i for i, x in enumerate(z) if x)
        inv = fld.inv(z[unit_idx])
        z = tuple(fld.mul(inv, x) for x in z)
        has_unit_partial = any(not fld.is_zero(d.evaluate(z)) for d in partials)
        free = [i for i in range(4) if i != unit_idx]
        total = p**6
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            idx = np.arange(start, stop, dtype=np.int64)
            coords = [None] * 4
            coords[unit_idx] = np.full(stop - start, 1, dtype=np.int64)
            shift = idx
            for i in free:
                a = shift % (p * p)
                shift = shift // (p * p)
                coords[i] = (z[i] + p * a) % m
            acc = np.zeros(stop - start, dtype=np.int64)
            pows = [[None] * 4 for _ in range(4)]
            for i in range(4):
                pows[i][0] = None
                pows[i][1] = coords[i]
                pows[i][2] = coords[i] * coords[i] % m
                pows[i][3] = pows[i][2] * coords[i] % m
            for c, e in monomials:
                term = np.full(stop - start, c % m, dtype=np.int64)
                for i in range(4):
                    if e[i]:
                        term = term * pows[i][e[i]] % m
                acc = (acc + term) % m
            hits = np.nonzero(acc == 0)[0]
            for h in hits:
                pt = tuple(int(coords[i][h]) for i in range(4))
                if has_unit_partial:
                    found.append(pt)
    return found
