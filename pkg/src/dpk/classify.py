"""Rule engine for the possible degrees of irrationality of del Pezzo
surfaces, by degree and field type.

classify() starts from the tabulated cell for (degree, field kind) and
intersects it with what the supplied evidence forces; every fired rule
carries a self-contained mathematical justification.  Unknown evidence
never narrows the result.  Contradictory evidence (an empty refinement)
raises InconsistentEvidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import InconsistentEvidence

FIELD_KINDS = ("Finite", "Local", "Number", "Arbitrary")

_T = {
    1: ({1, 2}, {1, 2}, {1, 2}, {1, 2}),
    2: ({1, 2}, {1, 2}, {1, 2}, {1, 2}),
    3: ({1, 2}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}),
    4: ({1, 2}, {1, 2}, {1, 2, 4}, {1, 2, 4}),
    5: ({1}, {1}, {1}, {1}),
    6: ({1}, {1, 2, 3}, {1, 2, 3, 6}, {1, 2, 3, 6}),
    7: ({1}, {1}, {1}, {1}),
    8: ({1}, {1, 2}, {1, 2}, {1, 2, 4}),
    9: ({1}, {1, 3}, {1, 3}, {1, 3}),
}


def table_row(degree: int, field_kind: str) -> set[int]:
    """The tabulated set of possible degrees of irrationality."""
    if degree not in _T:
        raise InconsistentEvidence(f"degree must be 1..9, got {degree}")
    if field_kind not in FIELD_KINDS:
        raise InconsistentEvidence(f"field kind must be one of {FIELD_KINDS}")
    return set(_T[degree][FIELD_KINDS.index(field_kind)])


def full_table() -> dict:
    return {
        d: {fk: sorted(table_row(d, fk)) for fk in FIELD_KINDS} for d in range(1, 10)
    }


EXISTS = "Exists"
KNOWN_EMPTY = "KnownEmpty"
UNKNOWN = "Unknown"
_STATUSES = (EXISTS, KNOWN_EMPTY, UNKNOWN)


@dataclass(frozen=True)
class PointRecord:
    degree: int
    status: str


@dataclass
class Evidence:
    degree: int
    field_kind: str
    point_records: list = dc_field(default_factory=list)
    h1_nontrivial: bool | None = None
    blunk: int | None = None
    pic_rank_d8: int | None = None
    quadric_form_d8: bool | None = None

    def status(self, e: int) -> str:
        for rec in self.point_records:
            if rec.degree == e and rec.status != UNKNOWN:
                return rec.status
        return UNKNOWN

    def to_json(self):
        return {
            "degree": self.degree,
            "field_kind": self.field_kind,
            "point_records": [[r.degree, r.status] for r in self.point_records],
            "h1_nontrivial": self.h1_nontrivial,
            "blunk": self.blunk,
            "pic_rank_d8": self.pic_rank_d8,
            "quadric_form_d8": self.quadric_form_d8,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            degree=data["degree"],
            field_kind=data["field_kind"],
            point_records=[PointRecord(d, s) for d, s in data.get("point_records", [])],
            h1_nontrivial=data.get("h1_nontrivial"),
            blunk=data.get("blunk"),
            pic_rank_d8=data.get("pic_rank_d8"),
            quadric_form_d8=data.get("quadric_form_d8"),
        )


@dataclass
class IrrReport:
    possible: tuple
    rules_fired: list
    certificate_refs: list

    def to_json(self):
        return {
            "schema": 1,
            "possible": list(self.possible),
            "rules_fired": [{"rule": r, "citation": c} for r, c in self.rules_fired],
            "certificate_refs": self.certificate_refs,
        }


def _validate(ev: Evidence):
    bad = lambda msg: InconsistentEvidence(msg)  # noqa: E731
    if ev.degree not in range(1, 10):
        raise bad(f"degree must be 1..9, got {ev.degree}")
    if ev.field_kind not in FIELD_KINDS:
        raise bad(f"unknown field kind {ev.field_kind}")
    seen: dict[int, str] = {}
    for rec in ev.point_records:
        if rec.degree < 1:
            raise bad("point degrees must be positive")
        if rec.status not in _STATUSES:
            raise bad(f"unknown point status {rec.status}")
        if rec.status == UNKNOWN:
            continue
        if seen.get(rec.degree, rec.status) != rec.status:
            raise bad(f"degree-{rec.degree} points both exist and are known empty")
        seen[rec.degree] = rec.status
    if ev.field_kind == "Finite" and ev.status(1) != EXISTS:
        raise bad("finite base fields force a rational point record (count is 1 mod q)")
    if ev.degree in (1, 5, 7) and ev.status(1) == KNOWN_EMPTY:
        raise bad(f"degree-{ev.degree} surfaces always have rational points")
    if ev.blunk is not None:
        if ev.degree != 6:
            raise bad("a minimal point degree record applies to degree 6 only")
        if ev.blunk not in (1, 2, 3, 6):
            raise bad("degree-6 minimal point degree divides 6")
        if ev.field_kind == "Local" and ev.blunk == 6:
            raise bad("over a local field the degree-6 irrationality degree is at most 3")
        if ev.field_kind == "Finite" and ev.blunk != 1:
            raise bad("finite fields give rational points, so the minimal degree is 1")
        for rec in ev.point_records:
            if rec.status == EXISTS and rec.degree < ev.blunk:
                raise bad("a point record is smaller than the declared minimal degree")
        if ev.status(ev.blunk) == KNOWN_EMPTY:
            raise bad("the declared minimal point degree is recorded as empty")
    if ev.pic_rank_d8 is not None:
        if ev.degree != 8:
            raise bad("Picard-rank evidence applies to degree 8 only")
        if ev.pic_rank_d8 not in (1, 2):
            raise bad("degree-8 Picard rank is 1 or 2")
        if not ev.quadric_form_d8:
            raise bad("Picard-rank evidence presumes the product-of-lines form")
    if ev.quadric_form_d8 is not None and ev.degree != 8:
        raise bad("form-type evidence applies to degree 8 only")
    if ev.h1_nontrivial:
        if ev.degree in (5, 7):
            raise bad("always-rational degrees have trivial Picard cohomology")
        if ev.degree == 9:
            raise bad("the geometric Picard lattice of a Brauer-Severi surface is trivial")
        if ev.degree == 8:
            raise bad("no form-preserving lattice action in degree 8 has nontrivial H^1")
        if ev.degree == 6 and ev.field_kind == "Finite":
            raise bad("the full cyclic scan in degree 6 finds only trivial H^1")


def classify(ev: Evidence) -> IrrReport:
    """Apply the rule base to the evidence; see table_row for the bounds."""
    _validate(ev)
    d, fk = ev.degree, ev.field_kind
    possible = table_row(d, fk)
    fired = [("table-bounds", "tabulated possibilities for this degree and field type")]
    refs = []

    def fire(rule, citation, new, ref=None):
        nonlocal possible
        fired.append((rule, citation))
        if ref:
            refs.append(ref)
        possible = possible & new

    if fk == "Finite":
        fire(
            "finite-field-point",
            "a del Pezzo surface over a finite field has a rational point: the point count "
            "is congruent to 1 mod q",
            possible,
            ref="field_kind=Finite",
        )
    if d in (1, 5, 7):
        fire(
            "automatic-point",
            "rational points are automatic in degrees 1, 5 and 7",
            possible,
        )
    has_point = ev.status(1) == EXISTS or fk == "Finite" or d in (1, 5, 7)
    no_point = ev.status(1) == KNOWN_EMPTY

    if d >= 5 and has_point:
        fire(
            "high-degree-rationality",
            "a del Pezzo surface of degree at least 5 with a rational point is rational",
            {1},
            ref="point_record(1, Exists)",
        )
    if no_point:
        fire(
            "no-rational-point",
            "a surface birational to the plane over an infinite field has rational points, "
            "so a pointless surface is not rational",
            possible - {1},
            ref="point_record(1, KnownEmpty)",
        )
    if ev.h1_nontrivial:
        fire(
            "picard-cohomology-obstruction",
            "nontrivial H^1 of the Galois action on the geometric Picard lattice is a "
            "birational invariant that vanishes for the plane",
            possible - {1},
            ref="h1_nontrivial",
        )
    if d == 3:
        if has_point:
            fire(
                "cubic-projection",
                "projection from a rational point on a smooth cubic surface is a degree-2 map",
                {1, 2},
                ref="point_record(1, Exists)",
            )
        if no_point:
            fire(
                "pointless-cubic",
                "a pointless cubic surface has no quadratic points (the residual intersection "
                "of the line through a conjugate pair would be rational), so its degree of "
                "irrationality is exactly 3",
                {3},
            )
    if d == 4:
        if has_point or ev.status(2) == EXISTS:
            fire(
                "quartic-small-point",
                "a point of degree at most 2 on a quartic del Pezzo gives a line meeting the "
                "surface in a 0-cycle of degree 2; projecting away from it has degree 2",
                {1, 2},
                ref="small point record",
            )
        if fk == "Local" and ev.status(2) == KNOWN_EMPTY:
            raise InconsistentEvidence(
                "intersections of two quadrics over local fields always have quadratic points"
            )
        if (
            ev.status(1) == KNOWN_EMPTY
            and ev.status(2) == KNOWN_EMPTY
            and ev.status(3) == KNOWN_EMPTY
        ):
            fire(
                "quartic-no-small-points",
                "with no points of degree less than 4, the degree of irrationality of a "
                "quartic del Pezzo is exactly 4",
                {4},
            )
    if d == 6 and ev.blunk is not None:
        fire(
            "deg6-minimal-point-degree",
            "the degree of irrationality of a degree-6 del Pezzo equals the minimal degree "
            "of a closed point",
            {ev.blunk},
            ref=f"blunk={ev.blunk}",
        )
    if d == 8 and ev.quadric_form_d8 is False:
        fire(
            "deg8-blowup-form",
            "the blow-up form of a degree-8 surface has a Galois-stable exceptional class; "
            "contracting it gives a degree-9 surface with a rational point",
            {1},
            ref="quadric_form_d8=False",
        )
    if d == 8 and ev.quadric_form_d8 and ev.status(2) == EXISTS:
        fire(
            "deg8-quadratic-point",
            "blowing up a quadratic point in general position on the product-of-lines form "
            "gives a degree-6 surface with a point of degree 2",
            {1, 2},
            ref="point_record(2, Exists)",
        )
    if d == 9:
        if has_point:
            fire(
                "brauer-severi-point",
                "a Brauer-Severi surface with a rational point is the plane",
                {1},
            )
        if no_point:
            fire(
                "brauer-severi-pointless",
                "a nontrivial Brauer-Severi surface has no points of degree prime to 3, and "
                "projection from a degree-6 zero-cycle in general position has degree 3",
                {3},
            )
    if not possible:
        raise InconsistentEvidence(
            f"evidence rules out every degree for d={d} over a {fk} field"
        )
    return IrrReport(possible=tuple(sorted(possible)), rules_fired=fired, certificate_refs=refs)
