"""Finite partially ordered monoids and their two-operation extensions.

A pomonoid is a finite monoid carrying a partial order that multiplication
respects on both sides.  Validation is a brute-force scan of every triple
and comparable pair, which is the point: the carrier is small and the
check doubles as the definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .report import LawRecord, Report


class PomonoidError(ValueError):
    pass


class DuplicateElement(PomonoidError):
    pass


class UnknownElement(PomonoidError):
    pass


class MissingTableEntry(PomonoidError):
    pass


class AssociativityViolation(PomonoidError):
    def __init__(self, a, b, c):
        self.witness = (a, b, c)
        super().__init__(f"(({a}*{b})*{c}) != ({a}*({b}*{c}))")


class UnitViolation(PomonoidError):
    def __init__(self, a):
        self.witness = a
        super().__init__(f"unit law fails at {a}")


class AntisymmetryViolation(PomonoidError):
    def __init__(self, a, b):
        self.witness = (a, b)
        super().__init__(f"{a} <= {b} and {b} <= {a} with {a} != {b}")


class MonotonicityViolation(PomonoidError):
    def __init__(self, w, x, y, z):
        self.witness = (w, x, y, z)
        super().__init__(f"{w}<={x}, {y}<={z} but not {w}*{y} <= {x}*{z}")


class NotAbsorbing(PomonoidError):
    pass


class NotTop(PomonoidError):
    pass


class UnmappedElement(PomonoidError):
    pass


class FileFormatError(PomonoidError):
    pass


@dataclass
class Pomonoid:
    """Carrier in declaration order, unit, full multiplication table, closed order."""

    elements: tuple[str, ...]
    unit: str
    mul: dict[tuple[str, str], str]
    leq: frozenset[tuple[str, str]]
    name: str = ""

    def times(self, a: str, b: str) -> str:
        return self.mul[(a, b)]

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    def comparable_pairs(self) -> list[tuple[str, str]]:
        return [(a, b) for a in self.elements for b in self.elements if self.le(a, b)]

    def is_discrete(self) -> bool:
        return all(a == b for a, b in self.leq)

    def commutes(self, a: str, b: str) -> bool:
        return self.times(a, b) == self.times(b, a)


def structurally_equal(P: Pomonoid, Q: Pomonoid) -> bool:
    """Same carrier set, unit, table, and order; names and declaration order ignored."""
    return (
        set(P.elements) == set(Q.elements)
        and P.unit == Q.unit
        and P.mul == Q.mul
        and P.leq == Q.leq
    )


def _order_closure(elements, pairs) -> frozenset:
    le = {(a, a) for a in elements}
    le.update(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (c, d) in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    return frozenset(le)


def validate_pomonoid(elements, unit, mul, le_pairs=(), name="") -> Pomonoid:
    """Build a Pomonoid after brute-force checking every axiom.

    ``le_pairs`` are generators: the reflexive-transitive closure is taken
    first, then antisymmetry and monotonicity are checked on the closure.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise DuplicateElement(f"duplicate elements in {elements}")
    members = set(elements)
    if unit not in members:
        raise UnknownElement(f"unit {unit!r} not among elements")

    mul = dict(mul)
    for a in elements:
        for b in elements:
            if (a, b) not in mul:
                raise MissingTableEntry(f"no entry for {a}*{b}")
            if mul[(a, b)] not in members:
                raise UnknownElement(f"{a}*{b} = {mul[(a, b)]!r} not among elements")
    for key in mul:
        if key[0] not in members or key[1] not in members:
            raise UnknownElement(f"table entry for unknown pair {key}")

    for (a, b) in le_pairs:
        if a not in members or b not in members:
            raise UnknownElement(f"order pair ({a},{b}) mentions unknown element")
    leq = _order_closure(elements, set(le_pairs))

    for a, b in leq:
        if a != b and (b, a) in leq:
            raise AntisymmetryViolation(a, b)

    for a in elements:
        if mul[(unit, a)] != a or mul[(a, unit)] != a:
            raise UnitViolation(a)

    for a in elements:
        for b in elements:
            ab = mul[(a, b)]
            for c in elements:
                if mul[(ab, c)] != mul[(a, mul[(b, c)])]:
                    raise AssociativityViolation(a, b, c)

    comparable = [(a, b) for (a, b) in leq]
    for (w, x) in comparable:
        for (y, z) in comparable:
            if (mul[(w, y)], mul[(x, z)]) not in leq:
                raise MonotonicityViolation(w, x, y, z)

    return Pomonoid(elements=elements, unit=unit, mul=mul, leq=leq, name=name)


def centre_of_pomonoid(P: Pomonoid) -> tuple[Pomonoid, "PomonoidMorphism"]:
    """Elements commuting with everything, as a sub-pomonoid plus its inclusion."""
    zs = tuple(z for z in P.elements if all(P.commutes(z, b) for b in P.elements))
    sub_mul = {(a, b): P.times(a, b) for a in zs for b in zs}
    sub_le = frozenset((a, b) for (a, b) in P.leq if a in zs and b in zs)
    Z = Pomonoid(elements=zs, unit=P.unit, mul=sub_mul, leq=sub_le, name=f"Z({P.name or 'G'})")
    incl = PomonoidMorphism(source=Z, target=P, mapping={z: z for z in zs})
    return Z, incl


@dataclass
class PomonoidMorphism:
    source: Pomonoid
    target: Pomonoid
    mapping: dict[str, str]

    def __call__(self, a: str) -> str:
        return self.mapping[a]


def identity_pomonoid_morphism(P: Pomonoid) -> PomonoidMorphism:
    return PomonoidMorphism(source=P, target=P, mapping={a: a for a in P.elements})


def check_pomonoid_morphism(m: PomonoidMorphism) -> Report:
    """Lax morphism conditions: unit below image of unit, lax multiplicativity, monotone."""
    P, Q = m.source, m.target
    for a in P.elements:
        if a not in m.mapping:
            raise UnmappedElement(f"{a!r} has no image")
        if m.mapping[a] not in set(Q.elements):
            raise UnknownElement(f"image {m.mapping[a]!r} not in target")
    rep = Report("pomonoid-morphism")

    rec = LawRecord(law="morphism-unit")
    if not Q.le(Q.unit, m(P.unit)):
        rec.ok = False
        rec.witness = P.unit
        rec.lhs = Q.unit
        rec.rhs = m(P.unit)
    rep.add(rec)

    rec = LawRecord(law="morphism-mul")
    for a in P.elements:
        for b in P.elements:
            if not Q.le(Q.times(m(a), m(b)), m(P.times(a, b))):
                rec.ok = False
                rec.witness = f"({a},{b})"
                rec.lhs = Q.times(m(a), m(b))
                rec.rhs = m(P.times(a, b))
                break
        if not rec.ok:
            break
    rep.add(rec)

    rec = LawRecord(law="morphism-monotone")
    for (a, b) in P.comparable_pairs():
        if not Q.le(m(a), m(b)):
            rec.ok = False
            rec.witness = f"({a},{b})"
            rec.lhs = m(a)
            rec.rhs = m(b)
            break
    rep.add(rec)
    return rep


# --- second operations: bimonoids and duoids ---------------------------

@dataclass
class Bimonoid:
    """A pomonoid with a second commutative monoid (unit2, op2) sitting above *."""

    base: Pomonoid
    op2: dict[tuple[str, str], str]
    unit2: str

    def par(self, a: str, b: str) -> str:
        return self.op2[(a, b)]


@dataclass
class Duoid:
    """A pomonoid with a commutative monotone monoid (unit2, par) satisfying interchange."""

    base: Pomonoid
    par: dict[tuple[str, str], str]
    unit2: str

    def par_of(self, a: str, b: str) -> str:
        return self.par[(a, b)]


def _check_second_op(rep: Report, P: Pomonoid, op: dict, unit2: str, tag: str) -> None:
    members = set(P.elements)
    if unit2 not in members:
        raise UnknownElement(f"{tag} unit {unit2!r} not among elements")
    for a in P.elements:
        for b in P.elements:
            if (a, b) not in op:
                raise MissingTableEntry(f"no {tag} entry for ({a},{b})")
            if op[(a, b)] not in members:
                raise UnknownElement(f"{a} {tag} {b} lands outside the carrier")

    rec = LawRecord(law=f"{tag}-assoc")
    for a in P.elements:
        for b in P.elements:
            ab = op[(a, b)]
            for c in P.elements:
                if op[(ab, c)] != op[(a, op[(b, c)])]:
                    rec.ok = False
                    rec.witness = f"({a},{b},{c})"
                    rec.lhs = op[(ab, c)]
                    rec.rhs = op[(a, op[(b, c)])]
                    break
            if not rec.ok:
                break
        if not rec.ok:
            break
    rep.add(rec)

    rec = LawRecord(law=f"{tag}-unit")
    for a in P.elements:
        if op[(unit2, a)] != a or op[(a, unit2)] != a:
            rec.ok = False
            rec.witness = a
            break
    rep.add(rec)

    rec = LawRecord(law=f"{tag}-commutative")
    for a in P.elements:
        for b in P.elements:
            if op[(a, b)] != op[(b, a)]:
                rec.ok = False
                rec.witness = f"({a},{b})"
                rec.lhs = op[(a, b)]
                rec.rhs = op[(b, a)]
                break
        if not rec.ok:
            break
    rep.add(rec)

    rec = LawRecord(law=f"{tag}-monotone")
    comparable = P.comparable_pairs()
    for (w, x) in comparable:
        for (y, z) in comparable:
            if not P.le(op[(w, y)], op[(x, z)]):
                rec.ok = False
                rec.witness = f"({w}<={x},{y}<={z})"
                rec.lhs = op[(w, y)]
                rec.rhs = op[(x, z)]
                break
        if not rec.ok:
            break
    rep.add(rec)


def check_bimonoid(B: Bimonoid) -> Report:
    """Second operation is a commutative monotone monoid with a*b <= a(x)b."""
    rep = Report("bimonoid")
    P = B.base
    _check_second_op(rep, P, B.op2, B.unit2, "op2")

    rec = LawRecord(law="bimonoid-delta")
    for a in P.elements:
        for b in P.elements:
            if not P.le(P.times(a, b), B.op2[(a, b)]):
                rec.ok = False
                rec.witness = f"({a},{b})"
                rec.lhs = P.times(a, b)
                rec.rhs = B.op2[(a, b)]
                break
        if not rec.ok:
            break
    rep.add(rec)
    return rep


def check_duoid(D: Duoid) -> Report:
    """Commutative monotone monoid plus the interchange inequality.

    The interchange scan is quartic in the carrier, so the four lookups run
    over precomputed index tables.
    """
    rep = Report("duoid")
    P = D.base
    _check_second_op(rep, P, D.par, D.unit2, "par")

    els = P.elements
    n = len(els)
    idx = {e: i for i, e in enumerate(els)}
    mul_t = [[idx[P.mul[(a, b)]] for b in els] for a in els]
    par_t = [[idx[D.par[(a, b)]] for b in els] for a in els]
    le_t = [[P.le(a, b) for b in els] for a in els]

    rec = LawRecord(law="duoid-interchange")
    found = None
    for ia in range(n):
        par_a = par_t[ia]
        mul_a = mul_t[ia]
        for ib in range(n):
            mul_ab = mul_t[ia][ib]
            par_b = par_t[ib]
            for ic in range(n):
                pac = par_a[ic]
                mul_c = mul_t[ic]
                lhs_row = mul_t[pac]
                par_ab = par_t[mul_ab]
                for idd in range(n):
                    lhs = lhs_row[par_b[idd]]
                    rhs = par_ab[mul_c[idd]]
                    if not le_t[lhs][rhs]:
                        found = (els[ia], els[ib], els[ic], els[idd])
                        break
                if found:
                    break
            if found:
                break
        if found:
            break
    if found:
        a, b, c, d = found
        rec.ok = False
        rec.witness = f"({a},{b},{c},{d})"
        rec.lhs = P.times(D.par[(a, c)], D.par[(b, d)])
        rec.rhs = D.par[(P.times(a, b), P.times(c, d))]
    rep.add(rec)

    # a*b <= a par b follows from interchange with units; scan it directly anyway.
    rec = LawRecord(law="duoid-derived-delta")
    for a in els:
        for b in els:
            if not P.le(P.times(a, b), D.par[(a, b)]):
                rec.ok = False
                rec.witness = f"({a},{b})"
                break
        if not rec.ok:
            break
    rep.add(rec)
    return rep


def bimonoid_from_absorbing_top(P: Pomonoid, top: str) -> Bimonoid:
    """Second operation: a*b when either argument is central, the top otherwise.

    Requires the top to be absorbing for * and the maximum of the order.
    """
    if top not in set(P.elements):
        raise UnknownElement(f"top {top!r} not among elements")
    for a in P.elements:
        if P.times(top, a) != top or P.times(a, top) != top:
            raise NotAbsorbing(f"{top} is not absorbing at {a}")
    for a in P.elements:
        if not P.le(a, top):
            raise NotTop(f"{a} is not below {top}")
    Z, _ = centre_of_pomonoid(P)
    central = set(Z.elements)
    op2 = {}
    for a in P.elements:
        for b in P.elements:
            if a in central or b in central:
                op2[(a, b)] = P.times(a, b)
            else:
                op2[(a, b)] = top
    return Bimonoid(base=P, op2=op2, unit2=P.unit)


# --- small builders -----------------------------------------------------

def trivial_pomonoid() -> Pomonoid:
    return validate_pomonoid(("i",), "i", {("i", "i"): "i"}, name="trivial")


def bool_pomonoid() -> Pomonoid:
    """Two truth values under conjunction, ordered tt <= ff."""
    mul = {
        ("tt", "tt"): "tt",
        ("tt", "ff"): "ff",
        ("ff", "tt"): "ff",
        ("ff", "ff"): "ff",
    }
    return validate_pomonoid(("tt", "ff"), "tt", mul, [("tt", "ff")], name="bool")


def multi_error_pomonoid(topped: bool = False) -> Pomonoid:
    """Grades for a computation that can error or raise one of two warnings.

    Sequencing keeps the most recent warning; errors absorb everything.
    The plain version is discretely ordered; the topped one puts the error
    grade above everything, which makes it absorbing-top material.
    """
    els = ("t", "e", "wa", "wb")
    row = {
        "t": ("t", "e", "wa", "wb"),
        "e": ("e", "e", "e", "e"),
        "wa": ("wa", "e", "wa", "wb"),
        "wb": ("wb", "e", "wa", "wb"),
    }
    mul = {(a, b): row[a][i] for a in els for i, b in enumerate(els)}
    le = [("t", "e"), ("wa", "e"), ("wb", "e")] if topped else []
    name = "multi_error_top" if topped else "multi_error"
    return validate_pomonoid(els, "t", mul, le, name=name)


# --- text format ---------------------------------------------------------

def parse_structure_text(text: str) -> dict:
    """Parse the plain-text table format.

    Lines: ``elements a b c``, ``unit a``, ``mul a b c`` (one per product),
    ``le a b`` (order generators), and optionally ``op2 a b c`` plus
    ``unit2 a`` for a second operation.  ``#`` starts a comment.
    """
    out = {"elements": None, "unit": None, "mul": {}, "le": [], "op2": {}, "unit2": None}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key, args = parts[0], parts[1:]
        if key == "elements":
            if out["elements"] is not None:
                raise FileFormatError(f"line {lineno}: duplicate elements line")
            out["elements"] = tuple(args)
        elif key == "unit":
            if len(args) != 1:
                raise FileFormatError(f"line {lineno}: unit takes one element")
            out["unit"] = args[0]
        elif key == "mul":
            if len(args) != 3:
                raise FileFormatError(f"line {lineno}: mul takes three elements")
            out["mul"][(args[0], args[1])] = args[2]
        elif key == "le":
            if len(args) != 2:
                raise FileFormatError(f"line {lineno}: le takes two elements")
            out["le"].append((args[0], args[1]))
        elif key == "op2":
            if len(args) != 3:
                raise FileFormatError(f"line {lineno}: op2 takes three elements")
            out["op2"][(args[0], args[1])] = args[2]
        elif key == "unit2":
            if len(args) != 1:
                raise FileFormatError(f"line {lineno}: unit2 takes one element")
            out["unit2"] = args[0]
        else:
            raise FileFormatError(f"line {lineno}: unknown directive {key!r}")
    if out["elements"] is None:
        raise FileFormatError("missing elements line")
    if out["unit"] is None:
        raise FileFormatError("missing unit line")
    return out


def load_pomonoid(text: str, name: str = "") -> Pomonoid:
    raw = parse_structure_text(text)
    return validate_pomonoid(raw["elements"], raw["unit"], raw["mul"], raw["le"], name=name)


def load_bimonoid(text: str, name: str = "") -> Bimonoid:
    raw = parse_structure_text(text)
    base = validate_pomonoid(raw["elements"], raw["unit"], raw["mul"], raw["le"], name=name)
    if not raw["op2"] or raw["unit2"] is None:
        raise FileFormatError("second operation requires op2 lines and a unit2 line")
    for a in base.elements:
        for b in base.elements:
            if (a, b) not in raw["op2"]:
                raise MissingTableEntry(f"no op2 entry for ({a},{b})")
    return Bimonoid(base=base, op2=raw["op2"], unit2=raw["unit2"])


def load_duoid(text: str, name: str = "") -> Duoid:
    B = load_bimonoid(text, name=name)
    return Duoid(base=B.base, par=B.op2, unit2=B.unit2)
