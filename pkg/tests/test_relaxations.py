import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centrekit.centre import build_centre_monad, central_subset
from centrekit.finkit import canonical_set, make_pair, tensor, tensor_fn
from centrekit.graded_monad import (
    bool_writer_pair,
    check_monad_laws,
    check_order_laws,
    check_strength_laws,
    identity_monad,
    multi_error_writer,
)
from centrekit.pomonoid import (
    Bimonoid,
    bimonoid_from_absorbing_top,
    check_duoid,
    multi_error_pomonoid,
)
from centrekit.relaxations import (
    AlphabetMismatch,
    BimonoidMismatch,
    CappedLanguage,
    ClosureExplosion,
    DuoidalGradedMonad,
    LanguageFormatError,
    NotCommutative,
    _annotation_subset,
    bimonoidal_centre_at,
    build_language_writer,
    check_duoidal_gradation,
    derive_monoidal_m,
    format_language_literal,
    language_concat,
    language_duoid,
    language_shuffle,
    parse_language_literal,
)


def lang(words, alphabet="ab", cap=3):
    return CappedLanguage(alphabet, cap, frozenset(words))


class TestCappedLanguage:
    def test_validation(self):
        with pytest.raises(LanguageFormatError):
            lang({"abab"})  # over the cap
        with pytest.raises(LanguageFormatError):
            lang({"ac"})  # foreign letter

    def test_literals_round_trip(self):
        for L in (lang(set()), lang({""}), lang({"ab", "ba"}), lang({"", "a"})):
            assert parse_language_literal(L.literal(), "ab", 3) == L
        assert format_language_literal(lang(set())) == "{}"
        assert format_language_literal(lang({""})) == "{_}"
        assert format_language_literal(lang({"ba", "ab"})) == "{ab,ba}"

    def test_parse_rejects_malformed(self):
        with pytest.raises(LanguageFormatError):
            parse_language_literal("ab", "ab", 3)
        with pytest.raises(LanguageFormatError):
            parse_language_literal("{a,,b}", "ab", 3)


class TestConcatShuffle:
    def test_concat_example(self):
        assert language_concat(lang({"a"}), lang({"b"})) == lang({"ab"})

    def test_concat_truncates_by_final_length(self):
        assert language_concat(lang({"ab"}), lang({"ba"})) == lang(set())
        assert language_concat(lang({"ab", ""}), lang({"ba"})) == lang({"ba"})

    def test_shuffle_example_three_letters(self):
        L = CappedLanguage("abc", 3, frozenset({"ab"}))
        M = CappedLanguage("abc", 3, frozenset({"c"}))
        assert language_shuffle(L, M).words == {"abc", "acb", "cab"}

    def test_empty_word_is_unit_for_both(self):
        eps = lang({""})
        for L in (lang({"a", "bb"}), lang(set()), lang({""})):
            assert language_concat(L, eps) == L
            assert language_concat(eps, L) == L
            assert language_shuffle(L, eps) == L
            assert language_shuffle(eps, L) == L

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            language_concat(lang({"a"}), CappedLanguage("ab", 2, frozenset({"a"})))

    def test_shuffle_matches_recursive_oracle_on_sampled_pairs(self):
        def oracle(u, v):
            if not u:
                return {v}
            if not v:
                return {u}
            return {u[0] + w for w in oracle(u[1:], v)} | \
                   {v[0] + w for w in oracle(u, v[1:])}

        rng = random.Random(9)
        for _ in range(20):
            u = "".join(rng.choice("ab") for _ in range(rng.randint(0, 3)))
            v = "".join(rng.choice("ab") for _ in range(rng.randint(0, 3)))
            L = CappedLanguage("ab", 6, frozenset({u}))
            M = CappedLanguage("ab", 6, frozenset({v}))
            assert language_shuffle(L, M).words == oracle(u, v)


words_st = st.frozensets(
    st.text(alphabet="ab", max_size=3), max_size=4)


class TestTruncationCoherence:
    @settings(max_examples=60, deadline=None)
    @given(words_st, words_st, words_st)
    def test_capped_ops_stay_associative(self, ws1, ws2, ws3):
        A, B, C = lang(ws1), lang(ws2), lang(ws3)
        assert language_concat(language_concat(A, B), C) == \
            language_concat(A, language_concat(B, C))
        assert language_shuffle(language_shuffle(A, B), C) == \
            language_shuffle(A, language_shuffle(B, C))

    @settings(max_examples=60, deadline=None)
    @given(words_st, words_st, words_st)
    def test_capped_ops_are_monotone(self, ws1, ws2, ws3):
        A, B = lang(ws1), lang(ws2)
        Bigger = lang(ws1 | ws3)
        assert language_concat(A, B).words <= language_concat(Bigger, B).words
        assert language_shuffle(A, B).words <= language_shuffle(Bigger, B).words

    @settings(max_examples=60, deadline=None)
    @given(words_st, words_st)
    def test_concat_is_a_sublanguage_of_shuffle(self, ws1, ws2):
        A, B = lang(ws1), lang(ws2)
        assert language_concat(A, B).words <= language_shuffle(A, B).words


class TestLanguageDuoid:
    def test_cap_two_closure(self):
        D = language_duoid("ab", 2)
        assert len(D.base.elements) == 9
        assert D.base.unit == "{_}"
        assert check_duoid(D).ok

    def test_cap_three_closure_passes_exhaustively(self):
        D = language_duoid("ab", 3)
        assert len(D.base.elements) == 23
        assert check_duoid(D).ok

    def test_trivial_duoid_from_unit_generator(self):
        D = language_duoid("ab", 2, generators=[CappedLanguage("ab", 2, frozenset({""}))])
        assert D.base.elements == ("{_}",)

    def test_interchange_instance(self):
        a, b, eps = lang({"a"}), lang({"b"}), lang({""})
        lhs = language_concat(language_shuffle(a, b), language_shuffle(eps, eps))
        rhs = language_shuffle(language_concat(a, eps), language_concat(b, eps))
        assert lhs.words <= rhs.words

    def test_closure_budget(self):
        with pytest.raises(ClosureExplosion):
            language_duoid("ab", 3, max_elements=10)

    def test_order_is_inclusion(self):
        D = language_duoid("ab", 2)
        assert D.base.le("{}", "{ab,ba}")
        assert D.base.le("{ab}", "{ab,ba}")
        assert not D.base.le("{a}", "{b}")


class TestLanguageWriter:
    DM = build_language_writer("ab", 2, language_duoid("ab", 2))

    def test_unit_lands_at_the_empty_word_grade(self):
        M = self.DM.monad
        assert M.pomonoid.unit == "{_}"
        assert M.unit_fn(canonical_set(1))("y0") == "(y0,{_})"

    def test_mult_concatenates_annotations(self):
        M = self.DM.monad
        X = canonical_set(1)
        mu = M.mult_fn("{a}", "{b}", X)
        assert mu("((y0,{b}),{a})") == "(y0,{ab})"
        assert mu("((y0,{}),{a})") == "(y0,{})"

    def test_m_shuffles_annotations(self):
        X = canonical_set(1)
        m = self.DM.m_fn("{a}", "{b}", X, X)
        assert m("((y0,{a}),(y0,{b}))") == "((y0,y0),{ab,ba})"

    def test_monad_and_order_laws(self):
        assert check_monad_laws(self.DM.monad, 2).ok
        assert check_order_laws(self.DM.monad, 1).ok
        assert check_strength_laws(self.DM.monad, 1).ok

    def test_duoidal_gradation_passes(self):
        assert check_duoidal_gradation(self.DM, 2).ok

    def test_main_diagram_is_strictly_lax(self):
        # interchange-first loses interleavings that multiply-first keeps,
        # so the diagram needs the annotation order; equality fails
        DM = self.DM
        M, D = DM.monad, DM.duoid
        a, b, c, d = "{a}", "{_}", "{_}", "{b}"
        X = Y = canonical_set(1)
        XY = tensor(X, Y)
        inner = DM.m_fn(b, d, X, Y)
        outer = DM.m_fn(a, c, M.carrier(b, X), M.carrier(d, Y))
        par_first = outer.then(M.fmap(D.par_of(a, c), inner)).then(
            M.mult_fn(D.par_of(a, c), D.par_of(b, d), XY))
        mul_first = tensor_fn(M.mult_fn(a, b, X), M.mult_fn(c, d, Y)).then(
            DM.m_fn("{a}", "{b}", X, Y))
        lifted = par_first.then(M.lift_fn("{ab}", "{ab,ba}", XY))
        t = make_pair(make_pair("(y0,{_})", "{a}"), make_pair("(y0,{b})", "{_}"))
        assert lifted(t) == "((y0,y0),{ab})"
        assert mul_first(t) == "((y0,y0),{ab,ba})"
        assert lifted(t) != mul_first(t)
        assert _annotation_subset(lifted(t), mul_first(t))

    def test_broken_m_fails_unit_and_unitor(self):
        good = self.DM
        M = good.monad
        from centrekit.finkit import FinFn, split_pair

        def dropping(a, b, X, Y):
            fn = good.m(a, b, X, Y)
            mapping = {}
            for t in fn.dom:
                value, _ = split_pair(fn(t))
                mapping[t] = make_pair(value, "{}")
            return FinFn(fn.dom, fn.cod, mapping)

        bad = DuoidalGradedMonad(monad=M, duoid=good.duoid, m=dropping)
        rep = check_duoidal_gradation(bad, 1, budget=40)
        failed = {r.law for r in rep.failures()}
        assert "m-unit" in failed
        assert "m-unitor-left" in failed


class TestDeriveMonoidalM:
    def test_identity_monad(self):
        DM, rep = derive_monoidal_m(identity_monad(multi_error_pomonoid()), 2)
        assert rep.ok
        X = canonical_set(2)
        m = DM.m_fn("wa", "wb", X, X)
        for t in m.dom:
            assert m(t) == t

    def test_centre_of_multi_error(self):
        res = build_centre_monad(multi_error_writer())
        DM, rep = derive_monoidal_m(res.monad, 2)
        assert rep.ok

    def test_noncommutative_is_rejected(self):
        with pytest.raises(NotCommutative):
            derive_monoidal_m(multi_error_writer(), 2)


class TestBimonoidalCentre:
    X2 = canonical_set(2)

    def test_absorbing_top_collapses_warning_grades(self):
        M = multi_error_writer(topped=True)
        B = bimonoid_from_absorbing_top(M.pomonoid, "e")
        for g in M.pomonoid.elements:
            cone = bimonoidal_centre_at(M, B, g, self.X2)
            assert set(cone.apex) == set(M.carrier(g, self.X2)), g

    def test_degenerates_to_plain_centrality_when_op2_is_mul(self):
        M = bool_writer_pair()
        P = M.pomonoid
        B = Bimonoid(base=P, op2={(x, y): P.times(x, y)
                                  for x in P.elements for y in P.elements},
                     unit2=P.unit)
        for g in P.elements:
            cone = bimonoidal_centre_at(M, B, g, self.X2)
            assert set(cone.apex) == set(central_subset(M, g, self.X2))

    def test_wrong_base_is_rejected(self):
        M = bool_writer_pair()
        B = bimonoid_from_absorbing_top(multi_error_pomonoid(topped=True), "e")
        with pytest.raises(BimonoidMismatch):
            bimonoidal_centre_at(M, B, "tt", self.X2)

    def test_non_dominating_op2_is_rejected(self):
        M = multi_error_writer(topped=True)
        P = M.pomonoid
        B = Bimonoid(base=P, op2={(x, y): "t" for x in P.elements
                                  for y in P.elements}, unit2="t")
        with pytest.raises(BimonoidMismatch):
            bimonoidal_centre_at(M, B, "wa", self.X2)
