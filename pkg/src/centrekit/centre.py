"""Central elements of a graded monad and the centre submonad they assemble into.

An element t of T^z X is central when sequencing it with any other computation
s, in either order, gives the same result.  The grade z itself has to be
central in the grading pomonoid first, otherwise the two composites land in
different carriers and the comparison is meaningless.

The quantifier over all test sets Y collapses to finitely many canonical sets:
an element of a polynomial T^b Y mentions at most degree(T^b) points of Y, so
by naturality every instance of the centrality equation factors through an
injection from a canonical set of that size.  `bound` widens the scan for
paranoia runs; it never changes the answer for polynomial carriers.
"""

from dataclasses import dataclass

from .finkit import FinFn, FinSet, all_fns, canonical_set, degree, make_pair, tensor
from .graded_monad import (
    GradedMonadMorphism,
    GradedStrongMonad,
    canonical_sets,
    check_commutative,
    check_graded_monad_morphism,
    commute_maps,
)
from .pomonoid import Pomonoid, PomonoidMorphism, centre_of_pomonoid
from .report import LawRecord, Report


class CentreError(ValueError):
    pass


class GradeNotCentral(CentreError):
    pass


class ElementNotInCarrier(CentreError):
    pass


class NotASubmonad(CentreError):
    pass


class CentralityViolation(RuntimeError):
    """A restricted component escaped the computed central subsets.

    Either the bound was unsound for this monad or a component is buggy;
    both must surface, so this is never caught internally.
    """

    def __init__(self, component: str, witness: str):
        super().__init__(f"{component} left the centre at {witness}")
        self.component = component
        self.witness = witness


def bound_for(M: GradedStrongMonad, b: str, bound=None) -> int:
    """Test-set size needed to decide centrality against grade b."""
    if callable(bound):
        return bound(b)
    if bound is not None:
        return int(bound)
    expr = M.functor_expr(b)
    if expr is None:
        raise CentreError(
            "monad has no functor expression; pass an explicit bound")
    return degree(expr)


def _central_grades(M: GradedStrongMonad) -> frozenset:
    key = ("central-grades",)
    if key not in M._memo:
        Z, _ = centre_of_pomonoid(M.pomonoid)
        M._memo[key] = frozenset(Z.elements)
    return M._memo[key]


def _require_central_grade(M: GradedStrongMonad, z: str) -> None:
    if z not in _central_grades(M):
        raise GradeNotCentral(f"{z} is not central in {M.pomonoid.name or 'the grading'}")


def _violation(M: GradedStrongMonad, z: str, X: FinSet, t: str, bound=None):
    """First (b, Y, s) against which t fails to commute, or None."""
    for b in M.pomonoid.elements:
        for n in range(bound_for(M, b, bound) + 1):
            Y = canonical_set(n)
            TbY = M.carrier(b, Y)
            if len(TbY) == 0:
                continue
            left, right = commute_maps(M, z, b, X, Y)
            for s in TbY:
                p = make_pair(t, s)
                if left(p) != right(p):
                    return b, Y, s
    return None


def is_central(M: GradedStrongMonad, z: str, X: FinSet, t: str, bound=None) -> bool:
    _require_central_grade(M, z)
    if t not in M.carrier(z, X):
        raise ElementNotInCarrier(f"{t} is not in the carrier at ({z}, {X.name})")
    return _violation(M, z, X, t, bound) is None


def central_subset(M: GradedStrongMonad, z: str, X: FinSet, bound=None) -> FinSet:
    """The central elements of T^z X, as a subset sharing the same tokens."""
    _require_central_grade(M, z)
    key = ("central-subset", z, X, bound if not callable(bound) else None)
    if callable(bound) or key not in M._memo:
        survivors = [t for t in M.carrier(z, X) if _violation(M, z, X, t, bound) is None]
        sub = FinSet(f"Z^{z}({X.name})", tuple(survivors))
        if callable(bound):
            return sub
        M._memo[key] = sub
    return M._memo[key]


@dataclass
class CentralCone:
    """An object with a leg into T^z X whose image commutes with everything."""

    grade: str
    base: FinSet
    apex: FinSet
    leg: FinFn

    def __post_init__(self):
        if self.leg.dom != self.apex:
            raise CentreError("leg domain is not the apex")


def graded_centre_at(M: GradedStrongMonad, z: str, X: FinSet, bound=None) -> CentralCone:
    sub = central_subset(M, z, X, bound)
    leg = FinFn(sub, M.carrier(z, X), {t: t for t in sub})
    return CentralCone(grade=z, base=X, apex=sub, leg=leg)


def check_central_cone(M: GradedStrongMonad, cone: CentralCone, bound=None,
                       closure_lemmas: bool = False) -> Report:
    """Verify the cone equation after the leg, against every test grade.

    With closure_lemmas the stability facts are exercised too: precomposing
    the leg with any map into the apex, and pushing the whole cone along any
    map out of the base, must both give cones again.
    """
    _require_central_grade(M, z := cone.grade)
    X = cone.base
    if cone.leg.cod != M.carrier(z, X):
        raise CentreError("leg codomain is not the carrier at the cone's grade")
    rep = Report(title=f"central cone ({z}, {X.name})")
    for b in M.pomonoid.elements:
        ok, witness = True, ""
        for n in range(bound_for(M, b, bound) + 1):
            Y = canonical_set(n)
            TbY = M.carrier(b, Y)
            if len(TbY) == 0:
                continue
            left, right = commute_maps(M, z, b, X, Y)
            for p in cone.apex:
                for s in TbY:
                    pair = make_pair(cone.leg(p), s)
                    if left(pair) != right(pair):
                        ok, witness = False, f"apex {p} vs {s} in T^{b} {Y.name}"
                        break
                if not ok:
                    break
            if not ok:
                break
        rep.add(LawRecord(law="cone-eq", grades=(z, b), sets=(X.name,), ok=ok,
                          witness=witness))
    if not closure_lemmas:
        return rep
    base_ok = rep.ok
    for n in range(3):
        W = canonical_set(n)
        ok = True
        for g in all_fns(W, cone.apex):
            pre = CentralCone(grade=z, base=X, apex=W, leg=g.then(cone.leg))
            if base_ok and not check_central_cone(M, pre, bound).ok:
                ok = False
                break
        rep.add(LawRecord(law="cone-precompose", grades=(z,), sets=(W.name, X.name),
                          ok=ok))
    for n in range(3):
        X2 = canonical_set(n)
        ok = True
        for h in all_fns(X, X2):
            post = CentralCone(grade=z, base=X2, apex=cone.apex,
                               leg=cone.leg.then(M.fmap(z, h)))
            if base_ok and not check_central_cone(M, post, bound).ok:
                ok = False
                break
        rep.add(LawRecord(law="cone-postcompose", grades=(z,), sets=(X.name, X2.name),
                          ok=ok))
    return rep


def factor_through(cone: CentralCone, centre: CentralCone) -> FinFn:
    """The unique map apex -> centre apex with centre.leg after it = cone.leg.

    Exists iff the cone only hits central elements; unique because the centre
    leg is injective.
    """
    if cone.grade != centre.grade or cone.base != centre.base:
        raise CentreError("cones are not over the same grade and base")
    preimage = {}
    for q in centre.apex:
        v = centre.leg(q)
        if v in preimage:
            raise CentreError("centre leg is not injective")
        preimage[v] = q
    mapping = {}
    for p in cone.apex:
        v = cone.leg(p)
        if v not in preimage:
            raise CentreError(f"cone hits the non-central element {v}")
        mapping[p] = preimage[v]
    return FinFn(cone.apex, centre.apex, mapping)


@dataclass
class CentreResult:
    monad: GradedStrongMonad
    inclusion: GradedMonadMorphism
    source: GradedStrongMonad
    bound: object = None

    def subset_at(self, z: str, X: FinSet) -> FinSet:
        return central_subset(self.source, z, X, self.bound)

    def describe(self, X: FinSet) -> list:
        out = []
        for z in self.monad.pomonoid.elements:
            sub = self.subset_at(z, X)
            out.append({
                "grade": z,
                "set": X.name,
                "carrier_size": len(self.source.carrier(z, X)),
                "centre_size": len(sub),
                "members": list(sub),
            })
        return out


def build_centre_monad(M: GradedStrongMonad, bound=None) -> CentreResult:
    """Assemble the central subsets into a monad over the grading's centre.

    Every component is the restriction of the corresponding component of M.
    Membership of each computed value in the target central subset is checked
    on the spot; an escape raises CentralityViolation rather than producing a
    quietly wrong monad.
    """
    ZP, phi = centre_of_pomonoid(M.pomonoid)

    def sub(z: str, X: FinSet) -> FinSet:
        return central_subset(M, z, X, bound)

    def restrict(fn: FinFn, dom: FinSet, cod: FinSet, component: str) -> FinFn:
        mapping = {}
        for t in dom:
            v = fn(t)
            if v not in cod:
                raise CentralityViolation(component, f"{t} -> {v}")
            mapping[t] = v
        return FinFn(dom, cod, mapping)

    def carrier_fn(z, X):
        return sub(z, X)

    def fmap_fn(z, f):
        return restrict(M.fmap(z, f), sub(z, f.dom), sub(z, f.cod), f"fmap({z})")

    def unit(X):
        return restrict(M.unit_fn(X), X, sub(ZP.unit, X), "unit")

    def mult(z1, z2, X):
        # tokens of Z^z1(Z^z2 X) are tokens of T^z1(T^z2 X), so the big
        # multiplication applies directly
        dom = sub(z1, sub(z2, X))
        big = M.mult_fn(z1, z2, X)
        mapping = {}
        cod = sub(ZP.times(z1, z2), X)
        for t in dom:
            v = big(t)
            if v not in cod:
                raise CentralityViolation(f"mult({z1},{z2})", f"{t} -> {v}")
            mapping[t] = v
        return FinFn(dom, cod, mapping)

    def strength(z, X, Y):
        dom = tensor(X, sub(z, Y))
        big = M.strength_fn(z, X, Y)
        cod = sub(z, tensor(X, Y))
        mapping = {}
        for t in dom:
            v = big(t)
            if v not in cod:
                raise CentralityViolation(f"strength({z})", f"{t} -> {v}")
            mapping[t] = v
        return FinFn(dom, cod, mapping)

    lift = None
    if M.lift is not None:
        def lift(z1, z2, X):
            return restrict(M.lift_fn(z1, z2, X), sub(z1, X), sub(z2, X),
                            f"lift({z1},{z2})")

    S = GradedStrongMonad(
        pomonoid=ZP,
        unit=unit,
        mult=mult,
        strength=strength,
        carrier_fn=carrier_fn,
        fmap_fn=fmap_fn,
        lift=lift,
        name=f"Z({M.name})" if M.name else "Z",
    )

    def component(z, X):
        s = sub(z, X)
        return FinFn(s, M.carrier(z, X), {t: t for t in s})

    iota = GradedMonadMorphism(phi=phi, source=S, target=M,
                               component=component, name="centre-inclusion")
    return CentreResult(monad=S, inclusion=iota, source=M, bound=bound)


def restrict_grades(M: GradedStrongMonad, sub: Pomonoid,
                    phi: PomonoidMorphism) -> tuple:
    """M with its grading cut down to a sub-pomonoid, carriers untouched.

    phi must embed sub into M's grading.  Returns the regraded monad and the
    evident inclusion morphism.
    """
    for z in sub.elements:
        if phi(z) != z:
            raise CentreError("grade restriction must embed elements by name")
    S = GradedStrongMonad(
        pomonoid=sub,
        unit=M.unit,
        mult=M.mult,
        strength=M.strength,
        functor=M.functor,
        carrier_fn=M.carrier_fn,
        fmap_fn=M.fmap_fn,
        lift=M.lift,
        costrength=M.costrength,
        name=f"{M.name}|{sub.name}" if M.name else sub.name,
    )
    iota = GradedMonadMorphism(
        phi=phi, source=S, target=M,
        component=lambda z, X: FinFn(S.carrier(z, X), M.carrier(z, X),
                                     {t: t for t in S.carrier(z, X)}),
        name="grade-restriction")
    return S, iota


def check_centrality_conditions(S: GradedStrongMonad, iota: GradedMonadMorphism,
                                k: int = 2, bound=None) -> Report:
    """Test the two equivalent descriptions of a central graded submonad.

    Condition (1): every component of iota is a central cone.  Condition (2):
    iota factors through the centre inclusion and S is commutative.  The two
    verdicts must agree; a mismatch is reported, not raised, since it means
    the equivalence itself failed on this instance.
    """
    if iota.source is not S:
        raise CentreError("iota does not start at S")
    M = iota.target
    pre = check_graded_monad_morphism(iota, k)
    if not pre.ok:
        raise NotASubmonad("iota is not a graded monad morphism")
    for z in S.pomonoid.elements:
        for X in canonical_sets(k):
            if not iota.component_fn(z, X).is_injective():
                raise NotASubmonad(f"component at ({z}, {X.name}) is not injective")

    rep = Report(title=f"centrality conditions for {S.name or 'S'}")
    cond1 = True
    for z in S.pomonoid.elements:
        for X in canonical_sets(k):
            cone = CentralCone(grade=iota.phi(z), base=X,
                               apex=S.carrier(z, X), leg=iota.component_fn(z, X))
            sub_rep = check_central_cone(M, cone, bound)
            ok = sub_rep.ok
            cond1 = cond1 and ok
            witness = sub_rep.failures()[0].witness if not ok else ""
            rep.add(LawRecord(law="condition-1-cone", grades=(z,), sets=(X.name,), ok=ok,
                              witness=witness))

    factors = True
    for z in S.pomonoid.elements:
        for X in canonical_sets(k):
            target = central_subset(M, iota.phi(z), X, bound)
            comp = iota.component_fn(z, X)
            missing = [t for t in comp.dom if comp(t) not in target]
            ok = not missing
            factors = factors and ok
            rep.add(LawRecord(law="condition-2-factorisation", grades=(z,), sets=(X.name,),
                              ok=ok, witness=missing[0] if missing else ""))
    commutative = check_commutative(S, k).ok
    rep.add(LawRecord(law="condition-2-commutative", ok=commutative))
    cond2 = factors and commutative

    agree = cond1 == cond2
    rep.add(LawRecord(law="theorem-agreement", ok=agree,
                      witness="" if agree else f"condition-1={cond1} condition-2={cond2}",
                      note="" if agree else "THEOREM-VIOLATION"))
    # the conditions agreeing on False is a legitimate outcome, so surface
    # the shared verdict separately from the report's own ok flag
    rep.add(LawRecord(law="conditions-verdict", ok=cond1,
                      note="both-true" if cond1 and agree else ("both-false" if agree else "")))
    return rep
