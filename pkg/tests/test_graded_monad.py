import pytest

from centrekit.finkit import (
    FinFn,
    FinSet,
    canonical_set,
    identity_fn,
    make_pair,
    split_pair,
    tensor,
)
from centrekit.graded_monad import (
    ComponentMissing,
    UnknownName,
    bool_writer_pair,
    build,
    check_all,
    check_commutative,
    check_costrength_coherence,
    check_graded_monad_morphism,
    check_monad_laws,
    check_naturality,
    check_order_laws,
    check_strength_laws,
    commute_maps,
    commuting_pair,
    derive_costrength,
    discrete_to_topped_morphism,
    identity_graded_morphism,
    identity_monad,
    multi_error_writer,
    registry,
    strength_from_costrength,
    writer_monad,
)
from centrekit.pomonoid import bool_pomonoid, multi_error_pomonoid, trivial_pomonoid


X2 = canonical_set(2)
X3 = canonical_set(3)


class TestMultiErrorWriter:
    M = multi_error_writer()

    def test_carriers(self):
        assert self.M.carrier("t", X2) == X2
        assert self.M.carrier("e", X2).elems == ("*",)
        assert set(self.M.carrier("wa", X2)) == {"(y0,a)", "(y1,a)"}

    def test_mu_on_two_warnings_keeps_value_and_product_annotation(self):
        # grade product sends (wa, wb) to wb, so the surviving pair is the
        # inner one; the value is never dropped
        mu = self.M.mult_fn("wa", "wb", X2)
        assert mu("((y0,b),a)") == "(y0,b)"
        mu = self.M.mult_fn("wb", "wa", X2)
        assert mu("((y1,a),b)") == "(y1,a)"

    def test_mu_error_absorbs(self):
        mu = self.M.mult_fn("wa", "e", X2)
        assert mu("(*,a)") == "*"
        mu = self.M.mult_fn("e", "wb", X2)
        assert mu("*") == "*"

    def test_monad_laws(self):
        assert check_monad_laws(self.M, 3).ok

    def test_strength_laws(self):
        assert check_strength_laws(self.M, 2).ok

    def test_costrength_coherence(self):
        assert check_costrength_coherence(self.M, 2).ok

    def test_naturality(self):
        assert check_naturality(self.M, 2).ok

    def test_order_laws_vacuous_on_discrete(self):
        rep = check_order_laws(self.M, 2)
        assert rep.ok
        assert rep.records[0].law == "order-vacuous"

    def test_costrength_formula(self):
        Y = FinSet("Y", ("u",))
        taup = self.M.costrength_fn("wa", X2, Y)
        assert taup("((y0,a),u)") == "((y0,u),a)"
        assert derive_costrength(self.M, "wa", X2, Y) == taup

    def test_commutative_fails_exactly_on_mixed_warnings(self):
        rep = check_commutative(self.M, 2)
        assert not rep.ok
        failing = {r.grades for r in rep.failures()}
        assert failing == {("wa", "wb"), ("wb", "wa")}
        for r in rep.failures():
            assert r.note == "carrier-mismatch"

    def test_commutative_verdict_symmetric(self):
        rep = check_commutative(self.M, 2)
        verdict = {r.grades: r.ok for r in rep.records}
        for (a, b), ok in verdict.items():
            assert verdict[(b, a)] == ok

    def test_topped_variant_order_laws(self):
        MT = multi_error_writer(topped=True)
        assert check_order_laws(MT, 2).ok
        assert check_monad_laws(MT, 2).ok
        assert check_strength_laws(MT, 2).ok


class TestIdentityMonad:
    def test_commutative_over_noncommutative_grades(self):
        M = identity_monad(multi_error_pomonoid())
        rep = check_commutative(M, 2)
        assert rep.ok

    def test_all_laws(self):
        M = identity_monad(multi_error_pomonoid())
        assert check_monad_laws(M, 2).ok
        assert check_strength_laws(M, 2).ok
        assert check_costrength_coherence(M, 2).ok

    def test_over_trivial_pomonoid(self):
        M = identity_monad(trivial_pomonoid())
        assert check_all(M, 2).ok


class TestBoolWriterPair:
    M = bool_writer_pair()

    def test_carriers(self):
        assert set(self.M.carrier("tt", canonical_set(1))) == {"(y0,e)", "(y0,t)"}
        assert len(self.M.carrier("ff", canonical_set(1))) == 4

    def test_unit_lands_at_tt_with_neutral_annotation(self):
        eta = self.M.unit_fn(X2)
        assert eta("y0") == "(y0,t)"

    def test_mu_multiplies_annotations_outer_first(self):
        mu = self.M.mult_fn("ff", "ff", X2)
        # outer wa then inner wb: grade table sends wa*wb to wb
        assert mu("((y0,wb),wa)") == "(y0,wb)"
        assert mu("((y0,wa),wb)") == "(y0,wa)"
        assert mu("((y1,e),t)") == "(y1,e)"

    def test_laws(self):
        assert check_monad_laws(self.M, 2).ok
        assert check_order_laws(self.M, 2).ok
        assert check_strength_laws(self.M, 2).ok
        assert check_costrength_coherence(self.M, 2).ok

    def test_commutative_fails_exactly_at_ff_ff(self):
        rep = check_commutative(self.M, 2)
        failing = {r.grades for r in rep.failures()}
        assert failing == {("ff", "ff")}
        (rec,) = rep.failures()
        assert rec.note == "value-mismatch"

    def test_commuting_pair_helper(self):
        assert commuting_pair(self.M, "tt", "ff", 2)
        assert not commuting_pair(self.M, "ff", "ff", 2)

    def test_broken_lift_detected(self):
        # constant lift keeps the typing but breaks naturality
        M = bool_writer_pair()
        good_lift = M.lift

        def bad_lift(a, b, X):
            fn = good_lift(a, b, X)
            if len(fn.cod) == 0:
                return fn
            first = fn.cod.elems[0]
            return FinFn(fn.dom, fn.cod, {t: first for t in fn.dom})

        M.lift = bad_lift
        rep = check_order_laws(M, 2)
        assert not rep.ok
        assert "lift-natural" in {r.law for r in rep.failures()}


class TestBrokenInstancesAreCaught:
    def test_value_cycling_mu_fails_associativity(self):
        M = multi_error_writer()
        good_mult = M.mult
        warnings = {"wa", "wb"}

        def bad_mult(a, b, X):
            fn = good_mult(a, b, X)
            if a in warnings and b in warnings and a != b:
                order = fn.cod.elems
                nxt = {order[i]: order[(i + 1) % len(order)] for i in range(len(order))}
                return FinFn(fn.dom, fn.cod, {t: nxt[fn(t)] for t in fn.dom})
            return fn

        M.mult = bad_mult
        M._memo.clear()
        rep = check_monad_laws(M, 2)
        assert not rep.ok
        failed = {r.law for r in rep.failures()}
        assert failed == {"assoc"}
        grades = {r.grades for r in rep.failures()}
        assert ("wa", "wb", "wa") in grades

    def test_value_dropping_strength_fails_unitor(self):
        M = multi_error_writer()
        good_strength = M.strength

        def bad_strength(a, X, Y):
            fn = good_strength(a, X, Y)
            if a != "wa" or len(Y) == 0:
                return fn
            # send the carried value to a fixed one; the unitor sees it
            mapping = {}
            for t in fn.dom:
                x, inner = split_pair(t)
                y0 = Y.elems[0]
                mapping[t] = make_pair(make_pair(x, y0), split_pair(inner)[1])
            return FinFn(fn.dom, fn.cod, mapping)

        M.strength = bad_strength
        M._memo.clear()
        rep = check_strength_laws(M, 2)
        assert "strength-unitor" in {r.law for r in rep.failures()}

    def test_value_swapping_costrength_fails_mult_diagram(self):
        M = multi_error_writer()

        def bad_costrength(a, X, Y):
            fn = derive_costrength(M, a, X, Y)
            if a not in {"wa", "wb"} or len(X) < 2:
                return fn
            # swapping the value is applied once along one composite and
            # twice along the other, so the squares with two costrengths see it
            swap = {X.elems[0]: X.elems[1], X.elems[1]: X.elems[0]}
            mapping = {}
            for t in fn.dom:
                pair, ann = split_pair(fn(t))
                x, y = split_pair(pair)
                mapping[t] = make_pair(make_pair(swap.get(x, x), y), ann)
            return FinFn(fn.dom, fn.cod, mapping)

        M.costrength = bad_costrength
        M._memo.clear()
        rep = check_costrength_coherence(M, 2)
        assert not rep.ok
        assert "costrength-mult" in {r.law for r in rep.failures()}

    def test_involution_detects_non_derived_costrength(self):
        M = bool_writer_pair()

        def flipped(a, X, Y):
            fn = derive_costrength(M, a, X, Y)
            if len(X) < 2:
                return fn
            mapping = {}
            for t in fn.dom:
                pair, ann = split_pair(fn(t))
                x, y = split_pair(pair)
                swap = {X.elems[0]: X.elems[1], X.elems[1]: X.elems[0]}
                mapping[t] = make_pair(make_pair(swap.get(x, x), y), ann)
            return FinFn(fn.dom, fn.cod, mapping)

        M.costrength = flipped
        M._memo.clear()
        rep = check_costrength_coherence(M, 2)
        assert "costrength-involution" in {r.law for r in rep.failures()}


class TestCommuteMaps:
    def test_composite_types(self):
        M = multi_error_writer()
        left, right = commute_maps(M, "wa", "wb", X2, X2)
        assert left.dom == tensor(M.carrier("wa", X2), M.carrier("wb", X2))
        assert left.cod == M.carrier("wb", tensor(X2, X2))
        assert right.cod == M.carrier("wa", tensor(X2, X2))

    def test_writer_annotations_multiply_in_order(self):
        M = bool_writer_pair()
        left, right = commute_maps(M, "ff", "ff", X2, X2)
        t = make_pair("(y0,wa)", "(y1,wb)")
        # left-first runs the first operand's effect first
        assert left(t) == "((y0,y1),wb)"
        assert right(t) == "((y0,y1),wa)"


class TestStrengthFromCostrength:
    def test_round_trip(self):
        M = multi_error_writer()
        for a in M.pomonoid.elements:
            assert strength_from_costrength(M, a, X2, X2) == M.strength_fn(a, X2, X2)


class TestMorphisms:
    def test_identity_morphism_passes(self):
        rep = check_graded_monad_morphism(identity_graded_morphism(multi_error_writer()), 2)
        assert rep.ok

    def test_discrete_to_topped_passes(self):
        rep = check_graded_monad_morphism(discrete_to_topped_morphism(), 2)
        assert rep.ok

    def test_component_type_mismatch_raises(self):
        M = multi_error_writer()
        m = identity_graded_morphism(M)
        m.component = lambda a, X: identity_fn(X)
        with pytest.raises(ComponentMissing):
            check_graded_monad_morphism(m, 1)

    def test_grade_level_failure_short_circuits(self):
        from centrekit.pomonoid import PomonoidMorphism

        S = multi_error_writer()
        m = discrete_to_topped_morphism()
        # sending the unit to a warning breaks the unit inequality, so the
        # component checks never run (they would raise on the t carrier)
        m.phi = PomonoidMorphism(
            source=S.pomonoid,
            target=multi_error_writer(topped=True).pomonoid,
            mapping={"t": "wa", "e": "e", "wa": "wa", "wb": "wb"},
        )
        rep = check_graded_monad_morphism(m, 1)
        assert not rep.ok
        assert all(r.law.startswith("grades.") for r in rep.records)


class TestWriterFactory:
    def test_annotation_mul_escaping_carrier_is_rejected(self):
        P = bool_pomonoid()
        carriers = {"tt": FinSet("Small", ("t",)), "ff": FinSet("Big", ("t", "e"))}

        def ann_mul(u, v):
            return "e"  # lands outside the tt carrier at (tt, tt)

        M = writer_monad(P, carriers, ann_mul, "t")
        with pytest.raises(ValueError):
            M.mult_fn("tt", "tt", X2)


class TestRegistry:
    def test_names(self):
        names = set(registry())
        assert {"identity", "multi_error_writer", "bool_writer_pair",
                "multi_error_writer_topped", "language_writer"} <= names

    def test_build_unknown(self):
        with pytest.raises(UnknownName):
            build("frobnicator")

    def test_build_identity_over_custom_pomonoid(self):
        M = build("identity", pomonoid=bool_pomonoid())
        assert M.pomonoid.elements == ("tt", "ff")

    def test_identity_over_trivial_reduces_to_plain_identity(self):
        M = build("identity", pomonoid=trivial_pomonoid())
        assert M.carrier("i", X3) == X3
        assert M.unit_fn(X3) == identity_fn(X3)
