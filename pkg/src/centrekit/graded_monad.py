"""Graded strong monads on finite sets, their law suites, and built-ins.

Conventions that everything below depends on:

* The composite T^a T^b X is carrier(a, carrier(b, X)): b is the inner
  grade.  mu(a, b, X) therefore consumes elements whose outer layer is
  graded a, and lands in the carrier at grade a*b.
* For writer-shaped instances the result annotation is outer-then-inner,
  matching the grade product orientation.
* Components are plain callables returning FinFns.  Nothing is natural by
  construction; the law suites check naturality exhaustively over all
  maps between the canonical test sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .finkit import (
    Const,
    FinFn,
    FinSet,
    FunctorExpr,
    Id,
    Prod,
    all_fns,
    alpha,
    alpha_inv,
    apply_mor,
    apply_obj,
    canonical_set,
    gamma,
    identity_fn,
    lam,
    make_pair,
    rho,
    split_pair,
    tensor,
    tensor_fn,
    unit_set,
)
from .pomonoid import (
    Pomonoid,
    PomonoidMorphism,
    bool_pomonoid,
    centre_of_pomonoid,
    check_pomonoid_morphism,
    identity_pomonoid_morphism,
    multi_error_pomonoid,
)
from .report import LawRecord, Report


class GradedMonadError(ValueError):
    pass


class ComponentMissing(GradedMonadError):
    pass


class UnknownName(GradedMonadError):
    pass


def canonical_sets(k: int) -> list[FinSet]:
    return [canonical_set(n) for n in range(k + 1)]


@dataclass
class GradedStrongMonad:
    """A pomonoid-graded strong monad presented by components.

    Either ``functor`` (grade -> FunctorExpr) or the pair
    ``carrier_fn``/``fmap_fn`` must be provided; the latter exists for
    monads whose carriers are not polynomial, like computed centres.
    ``lift`` may be omitted when the grading order is discrete.
    ``costrength`` may be omitted; it is then derived from the strength
    by conjugation with the symmetry.
    """

    pomonoid: Pomonoid
    unit: callable           # X -> FinFn: X -> T^i X
    mult: callable           # (a, b, X) -> FinFn: T^a T^b X -> T^{a*b} X
    strength: callable       # (a, X, Y) -> FinFn: X (x) T^a Y -> T^a (X (x) Y)
    functor: callable | None = None
    carrier_fn: callable | None = None
    fmap_fn: callable | None = None
    lift: callable | None = None        # (a, b, X) -> FinFn: T^a X -> T^b X
    costrength: callable | None = None  # (a, X, Y) -> FinFn: T^a X (x) Y -> T^a (X (x) Y)
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.functor is None and (self.carrier_fn is None or self.fmap_fn is None):
            raise ComponentMissing("need functor or carrier_fn+fmap_fn")

    def functor_expr(self, a: str) -> FunctorExpr | None:
        return self.functor(a) if self.functor is not None else None

    def carrier(self, a: str, X: FinSet) -> FinSet:
        key = ("carrier", a, X)
        if key not in self._memo:
            if self.functor is not None:
                self._memo[key] = apply_obj(self.functor(a), X)
            else:
                self._memo[key] = self.carrier_fn(a, X)
        return self._memo[key]

    def fmap(self, a: str, f: FinFn) -> FinFn:
        if self.functor is not None:
            return apply_mor(self.functor(a), f)
        return self.fmap_fn(a, f)

    def unit_fn(self, X: FinSet) -> FinFn:
        key = ("unit", X)
        if key not in self._memo:
            fn = self.unit(X)
            self._expect(fn, X, self.carrier(self.pomonoid.unit, X), "unit")
            self._memo[key] = fn
        return self._memo[key]

    def mult_fn(self, a: str, b: str, X: FinSet) -> FinFn:
        key = ("mult", a, b, X)
        if key not in self._memo:
            fn = self.mult(a, b, X)
            dom = self.carrier(a, self.carrier(b, X))
            cod = self.carrier(self.pomonoid.times(a, b), X)
            self._expect(fn, dom, cod, f"mult({a},{b})")
            self._memo[key] = fn
        return self._memo[key]

    def lift_fn(self, a: str, b: str, X: FinSet) -> FinFn:
        if not self.pomonoid.le(a, b):
            raise GradedMonadError(f"no lift: {a} is not below {b}")
        if a == b:
            return identity_fn(self.carrier(a, X))
        if self.lift is None:
            raise ComponentMissing(f"lift for {a} <= {b} not provided")
        key = ("lift", a, b, X)
        if key not in self._memo:
            fn = self.lift(a, b, X)
            self._expect(fn, self.carrier(a, X), self.carrier(b, X), f"lift({a},{b})")
            self._memo[key] = fn
        return self._memo[key]

    def strength_fn(self, a: str, X: FinSet, Y: FinSet) -> FinFn:
        key = ("tau", a, X, Y)
        if key not in self._memo:
            fn = self.strength(a, X, Y)
            dom = tensor(X, self.carrier(a, Y))
            cod = self.carrier(a, tensor(X, Y))
            self._expect(fn, dom, cod, f"strength({a})")
            self._memo[key] = fn
        return self._memo[key]

    def costrength_fn(self, a: str, X: FinSet, Y: FinSet) -> FinFn:
        key = ("tau'", a, X, Y)
        if key not in self._memo:
            if self.costrength is not None:
                fn = self.costrength(a, X, Y)
                dom = tensor(self.carrier(a, X), Y)
                cod = self.carrier(a, tensor(X, Y))
                self._expect(fn, dom, cod, f"costrength({a})")
            else:
                fn = derive_costrength(self, a, X, Y)
            self._memo[key] = fn
        return self._memo[key]

    @staticmethod
    def _expect(fn: FinFn, dom: FinSet, cod: FinSet, what: str) -> None:
        if fn.dom != dom or fn.cod != cod:
            raise ComponentMissing(f"{what} has wrong type")


def derive_costrength(M: GradedStrongMonad, a: str, X: FinSet, Y: FinSet) -> FinFn:
    """T^a X (x) Y -> T^a (X (x) Y) by swapping, strength, swapping inside."""
    TaX = M.carrier(a, X)
    swap_in = gamma(TaX, Y)
    tau = M.strength_fn(a, Y, X)
    swap_out = M.fmap(a, gamma(Y, X))
    return swap_in.then(tau).then(swap_out)


def strength_from_costrength(M: GradedStrongMonad, a: str, X: FinSet, Y: FinSet) -> FinFn:
    """The inverse derivation; coincides with the strength when tau' came from tau."""
    TaY = M.carrier(a, Y)
    swap_in = gamma(X, TaY)
    taup = M.costrength_fn(a, Y, X)
    swap_out = M.fmap(a, gamma(Y, X))
    return swap_in.then(taup).then(swap_out)


def commute_maps(M: GradedStrongMonad, a: str, b: str, X: FinSet, Y: FinSet):
    """The two sequencing composites T^a X (x) T^b Y -> T^{..}(X (x) Y).

    Left-first runs the a-computation's strength pass first and lands at
    grade a*b; right-first is the mirror landing at b*a.
    """
    TbY = M.carrier(b, Y)
    TaX = M.carrier(a, X)
    XY = tensor(X, Y)
    left = (
        M.costrength_fn(a, X, TbY)
        .then(M.fmap(a, M.strength_fn(b, X, Y)))
        .then(M.mult_fn(a, b, XY))
    )
    right = (
        M.strength_fn(b, TaX, Y)
        .then(M.fmap(b, M.costrength_fn(a, X, Y)))
        .then(M.mult_fn(b, a, XY))
    )
    return left, right


# --- law suites ----------------------------------------------------------

def check_monad_laws(M: GradedStrongMonad, k: int = 3) -> Report:
    """Unit and associativity diagrams, exhaustively over canonical sets."""
    rep = Report(f"monad-laws({M.name})")
    P = M.pomonoid
    i = P.unit
    sets = canonical_sets(k)
    for X in sets:
        for a in P.elements:
            TaX = M.carrier(a, X)
            left = M.unit_fn(TaX).then(M.mult_fn(i, a, X))
            rep.compare("unit-left", (a,), (X.name,), left, identity_fn(TaX))
            right = M.fmap(a, M.unit_fn(X)).then(M.mult_fn(a, i, X))
            rep.compare("unit-right", (a,), (X.name,), right, identity_fn(TaX))
    for X in sets:
        for a in P.elements:
            for b in P.elements:
                ab = P.times(a, b)
                for c in P.elements:
                    TcX = M.carrier(c, X)
                    outer_first = M.mult_fn(a, b, TcX).then(M.mult_fn(ab, c, X))
                    inner_first = M.fmap(a, M.mult_fn(b, c, X)).then(
                        M.mult_fn(a, P.times(b, c), X)
                    )
                    rep.compare("assoc", (a, b, c), (X.name,), outer_first, inner_first)
    return rep


def check_order_laws(M: GradedStrongMonad, k: int = 3) -> Report:
    """Lift functoriality, naturality, and compatibility with mu."""
    rep = Report(f"order-laws({M.name})")
    P = M.pomonoid
    sets = canonical_sets(k)
    comparable = P.comparable_pairs()
    if P.is_discrete():
        rep.add(LawRecord(law="order-vacuous", note="discrete order"))
        return rep

    for X in sets:
        for a in P.elements:
            rep.compare("lift-refl", (a, a), (X.name,), M.lift_fn(a, a, X),
                        identity_fn(M.carrier(a, X)))
        for (a, b) in comparable:
            for c in P.elements:
                if not P.le(b, c):
                    continue
                composed = M.lift_fn(a, b, X).then(M.lift_fn(b, c, X))
                rep.compare("lift-compose", (a, b, c), (X.name,), composed,
                            M.lift_fn(a, c, X))

    for X in sets:
        for Y in sets:
            for f in all_fns(X, Y):
                for (a, b) in comparable:
                    if a == b:
                        continue
                    lhs = M.fmap(a, f).then(M.lift_fn(a, b, Y))
                    rhs = M.lift_fn(a, b, X).then(M.fmap(b, f))
                    rep.compare("lift-natural", (a, b), (X.name, Y.name), lhs, rhs,
                                note=f"f={f.mapping}")

    for X in sets:
        for (a, a2) in comparable:
            for (b, b2) in comparable:
                if a == a2 and b == b2:
                    continue
                direct = M.mult_fn(a, b, X).then(
                    M.lift_fn(P.times(a, b), P.times(a2, b2), X))
                TbX = M.carrier(b, X)
                inside = (
                    M.lift_fn(a, a2, TbX)
                    .then(M.fmap(a2, M.lift_fn(b, b2, X)))
                    .then(M.mult_fn(a2, b2, X))
                )
                rep.compare("mult-lift", (a, a2, b, b2), (X.name,), direct, inside)
    return rep


def check_strength_laws(M: GradedStrongMonad, k: int = 3) -> Report:
    """The four strength axioms, naturality in both slots, lift and
    strength/costrength interchange compatibility."""
    rep = Report(f"strength-laws({M.name})")
    P = M.pomonoid
    i = P.unit
    sets = canonical_sets(k)
    I = unit_set()

    for Y in sets:
        for a in P.elements:
            TaY = M.carrier(a, Y)
            lhs = M.strength_fn(a, I, Y).then(M.fmap(a, lam(Y)))
            rep.compare("strength-unitor", (a,), (Y.name,), lhs, lam(TaY))

    for X in sets:
        for Y in sets:
            for Z in sets:
                for a in P.elements:
                    TaZ = M.carrier(a, Z)
                    via_assoc = (
                        alpha(X, Y, TaZ)
                        .then(tensor_fn(identity_fn(X), M.strength_fn(a, Y, Z)))
                        .then(M.strength_fn(a, X, tensor(Y, Z)))
                    )
                    direct = M.strength_fn(a, tensor(X, Y), Z).then(
                        M.fmap(a, alpha(X, Y, Z)))
                    rep.compare("strength-assoc", (a,), (X.name, Y.name, Z.name),
                                via_assoc, direct)

    for X in sets:
        for Y in sets:
            XY = tensor(X, Y)
            lhs = tensor_fn(identity_fn(X), M.unit_fn(Y)).then(M.strength_fn(i, X, Y))
            rep.compare("strength-unit", (i,), (X.name, Y.name), lhs, M.unit_fn(XY))
            for a in P.elements:
                for b in P.elements:
                    TbY = M.carrier(b, Y)
                    lhs = tensor_fn(identity_fn(X), M.mult_fn(a, b, Y)).then(
                        M.strength_fn(P.times(a, b), X, Y))
                    rhs = (
                        M.strength_fn(a, X, TbY)
                        .then(M.fmap(a, M.strength_fn(b, X, Y)))
                        .then(M.mult_fn(a, b, XY))
                    )
                    rep.compare("strength-mult", (a, b), (X.name, Y.name), lhs, rhs)

    for X in sets:
        for X2 in sets:
            for Y in sets:
                for a in P.elements:
                    TaY = M.carrier(a, Y)
                    for f in all_fns(X, X2):
                        lhs = tensor_fn(f, identity_fn(TaY)).then(M.strength_fn(a, X2, Y))
                        rhs = M.strength_fn(a, X, Y).then(M.fmap(a, tensor_fn(f, identity_fn(Y))))
                        rep.compare("strength-natural-left", (a,), (X.name, X2.name, Y.name),
                                    lhs, rhs, note=f"f={f.mapping}")
    for X in sets:
        for Y in sets:
            for Y2 in sets:
                for a in P.elements:
                    for g in all_fns(Y, Y2):
                        lhs = tensor_fn(identity_fn(X), M.fmap(a, g)).then(
                            M.strength_fn(a, X, Y2))
                        rhs = M.strength_fn(a, X, Y).then(
                            M.fmap(a, tensor_fn(identity_fn(X), g)))
                        rep.compare("strength-natural-right", (a,), (X.name, Y.name, Y2.name),
                                    lhs, rhs, note=f"g={g.mapping}")

    if not P.is_discrete():
        for X in sets:
            for Y in sets:
                for (a, b) in P.comparable_pairs():
                    if a == b:
                        continue
                    lhs = M.strength_fn(a, X, Y).then(M.lift_fn(a, b, tensor(X, Y)))
                    rhs = tensor_fn(identity_fn(X), M.lift_fn(a, b, Y)).then(
                        M.strength_fn(b, X, Y))
                    rep.compare("strength-lift", (a, b), (X.name, Y.name), lhs, rhs)

    # strength/costrength interchange across a sandwiched tensor
    for W in sets:
        for X in sets:
            for Y in sets:
                for a in P.elements:
                    TaX = M.carrier(a, X)
                    WX = tensor(W, X)
                    lhs = tensor_fn(M.strength_fn(a, W, X), identity_fn(Y)).then(
                        M.costrength_fn(a, WX, Y))
                    rhs = (
                        alpha(W, TaX, Y)
                        .then(tensor_fn(identity_fn(W), M.costrength_fn(a, X, Y)))
                        .then(M.strength_fn(a, W, tensor(X, Y)))
                        .then(M.fmap(a, alpha_inv(W, X, Y)))
                    )
                    rep.compare("strength-interchange", (a,), (W.name, X.name, Y.name),
                                lhs, rhs)
    return rep


def check_costrength_coherence(M: GradedStrongMonad, k: int = 3) -> Report:
    """Mirror diagrams for the costrength, plus the swap involution."""
    rep = Report(f"costrength-coherence({M.name})")
    P = M.pomonoid
    i = P.unit
    sets = canonical_sets(k)
    I = unit_set()

    for X in sets:
        for a in P.elements:
            TaX = M.carrier(a, X)
            lhs = M.costrength_fn(a, X, I).then(M.fmap(a, rho(X)))
            rep.compare("costrength-unitor", (a,), (X.name,), lhs, rho(TaX))

    for X in sets:
        for Y in sets:
            XY = tensor(X, Y)
            lhs = tensor_fn(M.unit_fn(X), identity_fn(Y)).then(M.costrength_fn(i, X, Y))
            rep.compare("costrength-unit", (i,), (X.name, Y.name), lhs, M.unit_fn(XY))
            for a in P.elements:
                for b in P.elements:
                    TbX = M.carrier(b, X)
                    lhs = tensor_fn(M.mult_fn(a, b, X), identity_fn(Y)).then(
                        M.costrength_fn(P.times(a, b), X, Y))
                    rhs = (
                        M.costrength_fn(a, TbX, Y)
                        .then(M.fmap(a, M.costrength_fn(b, X, Y)))
                        .then(M.mult_fn(a, b, XY))
                    )
                    rep.compare("costrength-mult", (a, b), (X.name, Y.name), lhs, rhs)

    for X in sets:
        for Y in sets:
            for Z in sets:
                for a in P.elements:
                    TaX = M.carrier(a, X)
                    via_assoc = (
                        alpha_inv(TaX, Y, Z)
                        .then(tensor_fn(M.costrength_fn(a, X, Y), identity_fn(Z)))
                        .then(M.costrength_fn(a, tensor(X, Y), Z))
                    )
                    direct = M.costrength_fn(a, X, tensor(Y, Z)).then(
                        M.fmap(a, alpha_inv(X, Y, Z)))
                    rep.compare("costrength-assoc", (a,), (X.name, Y.name, Z.name),
                                via_assoc, direct)

    for X in sets:
        for Y in sets:
            for a in P.elements:
                rep.compare("costrength-involution", (a,), (X.name, Y.name),
                            strength_from_costrength(M, a, X, Y),
                            M.strength_fn(a, X, Y))
    return rep


def check_naturality(M: GradedStrongMonad, k: int = 3) -> Report:
    """Functoriality of every T^a and naturality of unit and mult."""
    rep = Report(f"naturality({M.name})")
    P = M.pomonoid
    sets = canonical_sets(k)
    for X in sets:
        for a in P.elements:
            rep.compare("fmap-id", (a,), (X.name,),
                        M.fmap(a, identity_fn(X)), identity_fn(M.carrier(a, X)))
    # composition is quadratic in the function count, so cap the sizes
    small = [S for S in sets if len(S) <= 2]
    for X in small:
        for Y in small:
            for Z in small:
                for f in all_fns(X, Y):
                    for g in all_fns(Y, Z):
                        for a in P.elements:
                            rep.compare("fmap-compose", (a,),
                                        (X.name, Y.name, Z.name),
                                        M.fmap(a, f).then(M.fmap(a, g)),
                                        M.fmap(a, f.then(g)),
                                        note=f"f={f.mapping} g={g.mapping}")
    for X in sets:
        for Y in sets:
            for f in all_fns(X, Y):
                lhs = f.then(M.unit_fn(Y))
                rhs = M.unit_fn(X).then(M.fmap(P.unit, f))
                rep.compare("unit-natural", (P.unit,), (X.name, Y.name), lhs, rhs,
                            note=f"f={f.mapping}")
                for a in P.elements:
                    for b in P.elements:
                        lhs = M.fmap(a, M.fmap(b, f)).then(M.mult_fn(a, b, Y))
                        rhs = M.mult_fn(a, b, X).then(M.fmap(P.times(a, b), f))
                        rep.compare("mult-natural", (a, b), (X.name, Y.name), lhs, rhs,
                                    note=f"f={f.mapping}")
    return rep


def check_commutative(M: GradedStrongMonad, k: int = 3) -> Report:
    """Left-first vs right-first sequencing at every grade pair.

    A pair passes only if the two target carriers are equal as sets of
    tokens and the two composites agree pointwise; the record notes which
    of the two comparisons broke.
    """
    rep = Report(f"commutative({M.name})")
    P = M.pomonoid
    sets = canonical_sets(k)
    for a in P.elements:
        for b in P.elements:
            rec = LawRecord(law="commute", grades=(a, b))
            for X in sets:
                for Y in sets:
                    XY = tensor(X, Y)
                    Cab = M.carrier(P.times(a, b), XY)
                    Cba = M.carrier(P.times(b, a), XY)
                    if Cab != Cba:
                        rec.ok = False
                        rec.note = "carrier-mismatch"
                        rec.sets = (X.name, Y.name)
                        only = sorted(set(Cab.elems) ^ set(Cba.elems))
                        rec.witness = only[0] if only else None
                        break
                    left, right = commute_maps(M, a, b, X, Y)
                    for t in left.dom:
                        if left(t) != right(t):
                            rec.ok = False
                            rec.note = "value-mismatch"
                            rec.sets = (X.name, Y.name)
                            rec.witness = t
                            rec.lhs = left(t)
                            rec.rhs = right(t)
                            break
                    if not rec.ok:
                        break
                if not rec.ok:
                    break
            rep.add(rec)
    return rep


def commuting_pair(M: GradedStrongMonad, a: str, b: str, k: int = 3) -> bool:
    """The pairwise slice of check_commutative for one grade pair."""
    P = M.pomonoid
    for X in canonical_sets(k):
        for Y in canonical_sets(k):
            XY = tensor(X, Y)
            if M.carrier(P.times(a, b), XY) != M.carrier(P.times(b, a), XY):
                return False
            left, right = commute_maps(M, a, b, X, Y)
            if left != right:
                return False
    return True


def check_all(M: GradedStrongMonad, k: int = 3) -> Report:
    rep = Report(f"all-laws({M.name})")
    rep.extend(check_monad_laws(M, k))
    rep.extend(check_order_laws(M, k))
    rep.extend(check_strength_laws(M, k))
    rep.extend(check_costrength_coherence(M, k))
    rep.extend(check_naturality(M, k))
    return rep


# --- morphisms ------------------------------------------------------------

@dataclass
class GradedMonadMorphism:
    """Components source^a X -> target^{phi a} X over a pomonoid morphism."""

    phi: PomonoidMorphism
    source: GradedStrongMonad
    target: GradedStrongMonad
    component: callable     # (a, X) -> FinFn
    name: str = ""

    def component_fn(self, a: str, X: FinSet) -> FinFn:
        fn = self.component(a, X)
        dom = self.source.carrier(a, X)
        cod = self.target.carrier(self.phi(a), X)
        if fn.dom != dom or fn.cod != cod:
            raise ComponentMissing(f"component({a}) has wrong type")
        return fn


def identity_graded_morphism(M: GradedStrongMonad) -> GradedMonadMorphism:
    return GradedMonadMorphism(
        phi=identity_pomonoid_morphism(M.pomonoid),
        source=M,
        target=M,
        component=lambda a, X: identity_fn(M.carrier(a, X)),
        name=f"id({M.name})",
    )


def check_graded_monad_morphism(m: GradedMonadMorphism, k: int = 3) -> Report:
    """Unit, mult, strength, lift squares plus naturality of each component."""
    rep = Report(f"monad-morphism({m.name})")
    rep.extend(check_pomonoid_morphism(m.phi), prefix="grades.")
    if not rep.ok:
        return rep
    S, T, phi = m.source, m.target, m.phi
    GP, HP = S.pomonoid, T.pomonoid
    sets = canonical_sets(k)

    for X in sets:
        lhs = S.unit_fn(X).then(m.component_fn(GP.unit, X))
        rhs = T.unit_fn(X).then(T.lift_fn(HP.unit, phi(GP.unit), X))
        rep.compare("unit-square", (GP.unit,), (X.name,), lhs, rhs)

    for X in sets:
        for a in GP.elements:
            for b in GP.elements:
                ab = GP.times(a, b)
                SbX = S.carrier(b, X)
                lhs = S.mult_fn(a, b, X).then(m.component_fn(ab, X))
                rhs = (
                    m.component_fn(a, SbX)
                    .then(T.fmap(phi(a), m.component_fn(b, X)))
                    .then(T.mult_fn(phi(a), phi(b), X))
                    .then(T.lift_fn(HP.times(phi(a), phi(b)), phi(ab), X))
                )
                rep.compare("mult-square", (a, b), (X.name,), lhs, rhs)

    for X in sets:
        for Y in sets:
            for a in GP.elements:
                lhs = S.strength_fn(a, X, Y).then(m.component_fn(a, tensor(X, Y)))
                rhs = tensor_fn(identity_fn(X), m.component_fn(a, Y)).then(
                    T.strength_fn(phi(a), X, Y))
                rep.compare("strength-square", (a,), (X.name, Y.name), lhs, rhs)

    for X in sets:
        for (a, b) in GP.comparable_pairs():
            if a == b:
                continue
            lhs = S.lift_fn(a, b, X).then(m.component_fn(b, X))
            rhs = m.component_fn(a, X).then(T.lift_fn(phi(a), phi(b), X))
            rep.compare("lift-square", (a, b), (X.name,), lhs, rhs)

    for X in sets:
        for Y in sets:
            for f in all_fns(X, Y):
                for a in GP.elements:
                    lhs = S.fmap(a, f).then(m.component_fn(a, Y))
                    rhs = m.component_fn(a, X).then(T.fmap(phi(a), f))
                    rep.compare("component-natural", (a,), (X.name, Y.name), lhs, rhs,
                                note=f"f={f.mapping}")
    return rep


# --- built-in instances ----------------------------------------------------

def identity_monad(P: Pomonoid) -> GradedStrongMonad:
    """Every grade maps to the identity functor; all components identities."""
    return GradedStrongMonad(
        pomonoid=P,
        functor=lambda a: Id(),
        unit=identity_fn,
        mult=lambda a, b, X: identity_fn(X),
        strength=lambda a, X, Y: identity_fn(tensor(X, Y)),
        lift=lambda a, b, X: identity_fn(X),
        name=f"identity({P.name or 'G'})",
    )


_WARN_VALUE = {"wa": "a", "wb": "b"}


def multi_error_writer(topped: bool = False) -> GradedStrongMonad:
    """Writer with per-grade annotation sets and an absorbing error grade.

    The unit grade carries no annotation, each warning grade carries its
    own one-element annotation, and the error grade collapses everything
    to a point.  mult keeps the value and the annotation selected by the
    grade product; any error grade in the product discards both.
    """
    P = multi_error_pomonoid(topped=topped)
    warnings = set(_WARN_VALUE)
    exprs = {
        "t": Id(),
        "e": Const(unit_set()),
        "wa": Prod(Id(), Const(FinSet("Wa", ("a",)))),
        "wb": Prod(Id(), Const(FinSet("Wb", ("b",)))),
    }

    def mult(a, b, X):
        dom_inner = apply_obj(exprs[b], X)
        dom = apply_obj(exprs[a], dom_inner)
        cod = apply_obj(exprs[P.times(a, b)], X)
        if P.times(a, b) == "e":
            return FinFn(dom, cod, {t: "*" for t in dom})
        if a in warnings and b in warnings:
            return FinFn(dom, cod, {t: split_pair(t)[0] for t in dom})
        # remaining cases have a = t or b = t, so the carriers coincide
        return FinFn(dom, cod, {t: t for t in dom})

    def strength(a, X, Y):
        TaY = apply_obj(exprs[a], Y)
        dom = tensor(X, TaY)
        cod = apply_obj(exprs[a], tensor(X, Y))
        if a == "e":
            return FinFn(dom, cod, {t: "*" for t in dom})
        if a == "t":
            return FinFn(dom, cod, {t: t for t in dom})
        mapping = {}
        for t in dom:
            x, inner = split_pair(t)
            y, ann = split_pair(inner)
            mapping[t] = make_pair(make_pair(x, y), ann)
        return FinFn(dom, cod, mapping)

    def lift(a, b, X):
        # only grade e sits above others, and its carrier is a point
        dom = apply_obj(exprs[a], X)
        cod = apply_obj(exprs[b], X)
        if b == "e":
            return FinFn(dom, cod, {t: "*" for t in dom})
        raise ComponentMissing(f"unexpected lift {a} <= {b}")

    return GradedStrongMonad(
        pomonoid=P,
        functor=lambda a: exprs[a],
        unit=identity_fn,
        mult=mult,
        strength=strength,
        lift=lift if topped else None,
        name="multi_error_writer_topped" if topped else "multi_error_writer",
    )


def writer_monad(P: Pomonoid, carriers: dict[str, FinSet],
                 annotation_mul, unit_ann: str, name: str = "writer") -> GradedStrongMonad:
    """Graded writer over per-grade annotation sets.

    carriers[a] is the annotation set at grade a; annotation_mul(u, v)
    multiplies an outer annotation u with an inner one v, and must land
    in carriers[a*b] whenever u is in carriers[a] and v in carriers[b].
    Lifts are token inclusions, so carriers must grow along the order.
    """
    exprs = {a: Prod(Id(), Const(carriers[a])) for a in P.elements}

    def mult(a, b, X):
        inner = apply_obj(exprs[b], X)
        dom = apply_obj(exprs[a], inner)
        cod = apply_obj(exprs[P.times(a, b)], X)
        mapping = {}
        for t in dom:
            pair, outer_ann = split_pair(t)
            x, inner_ann = split_pair(pair)
            mapping[t] = make_pair(x, annotation_mul(outer_ann, inner_ann))
        return FinFn(dom, cod, mapping)

    def strength(a, X, Y):
        dom = tensor(X, apply_obj(exprs[a], Y))
        cod = apply_obj(exprs[a], tensor(X, Y))
        mapping = {}
        for t in dom:
            x, inner = split_pair(t)
            y, ann = split_pair(inner)
            mapping[t] = make_pair(make_pair(x, y), ann)
        return FinFn(dom, cod, mapping)

    def lift(a, b, X):
        dom = apply_obj(exprs[a], X)
        cod = apply_obj(exprs[b], X)
        return FinFn(dom, cod, {t: t for t in dom})

    def unit(X):
        cod = apply_obj(exprs[P.unit], X)
        return FinFn(X, cod, {x: make_pair(x, unit_ann) for x in X})

    return GradedStrongMonad(
        pomonoid=P,
        functor=lambda a: exprs[a],
        unit=unit,
        mult=mult,
        strength=strength,
        lift=lift,
        name=name,
    )


def bool_writer_pair(M: Pomonoid | None = None) -> GradedStrongMonad:
    """Two-level writer: central annotations at tt, the full monoid at ff.

    M is any finite monoid given as a (discretely ordered is fine)
    pomonoid; annotations multiply in M, and the tt-grade carrier is cut
    down to the centre of M so that the lift along tt <= ff is a plain
    inclusion.
    """
    if M is None:
        M = multi_error_pomonoid()
    Z, _ = centre_of_pomonoid(M)
    P = bool_pomonoid()
    carriers = {
        "tt": FinSet(f"Z({M.name or 'M'})", Z.elements),
        "ff": FinSet(M.name or "M", M.elements),
    }
    return writer_monad(P, carriers, M.times, M.unit, name="bool_writer_pair")


def discrete_to_topped_morphism() -> GradedMonadMorphism:
    """Same writer, finer grade order: identity components over identity grades."""
    S = multi_error_writer()
    T = multi_error_writer(topped=True)
    phi = PomonoidMorphism(source=S.pomonoid, target=T.pomonoid,
                           mapping={a: a for a in S.pomonoid.elements})
    return GradedMonadMorphism(
        phi=phi, source=S, target=T,
        component=lambda a, X: identity_fn(S.carrier(a, X)),
        name="discrete-to-topped",
    )


def registry() -> dict:
    """Zero-config builders for the named built-ins."""
    def language_writer():
        from .relaxations import build_language_writer, language_duoid
        duoid = language_duoid("ab", 2)
        return build_language_writer("ab", 2, duoid).monad

    return {
        "identity": lambda: identity_monad(multi_error_pomonoid()),
        "multi_error_writer": multi_error_writer,
        "multi_error_writer_topped": lambda: multi_error_writer(topped=True),
        "bool_writer_pair": bool_writer_pair,
        "language_writer": language_writer,
    }


def build(name: str, pomonoid: Pomonoid | None = None) -> GradedStrongMonad:
    reg = registry()
    if name not in reg:
        raise UnknownName(f"no built-in monad named {name!r}")
    if name == "identity" and pomonoid is not None:
        return identity_monad(pomonoid)
    if name == "bool_writer_pair" and pomonoid is not None:
        return bool_writer_pair(pomonoid)
    return reg[name]()
