"""Relative centres and parallel-composition structure on the grading.

Two relaxations live here.  Bimonoidal centres compare the two sequencing
composites only after transporting both into a common over-approximating
grade a(*)b.  Duoidal gradations add an interchange map m that runs two
computations side by side, graded by a second multiplication on the
pomonoid.

The running example is the duoid of capped languages under concatenation
and shuffle, with its graded writer monad.  Capping keeps everything
finite: a word is kept iff its final length fits, which preserves
associativity because intermediate words are never shorter than the final
one they end up in.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations

from .centre import bound_for, CentralCone
from .finkit import (
    FinFn,
    FinSet,
    all_fns,
    alpha,
    canonical_set,
    identity_fn,
    lam,
    lam_inv,
    make_pair,
    rho,
    rho_inv,
    split_pair,
    tensor,
    tensor_fn,
    unit_set,
)
from .graded_monad import (
    GradedStrongMonad,
    canonical_sets,
    check_commutative,
    commute_maps,
    writer_monad,
)
from .pomonoid import Bimonoid, Duoid, Pomonoid, structurally_equal, validate_pomonoid
from .report import LawRecord, Report


class LanguageError(ValueError):
    pass


class LanguageFormatError(LanguageError):
    pass


class AlphabetMismatch(LanguageError):
    pass


class ClosureExplosion(LanguageError):
    pass


class BimonoidMismatch(ValueError):
    pass


class NotCommutative(ValueError):
    pass


@dataclass(frozen=True)
class CappedLanguage:
    alphabet: str
    cap: int
    words: frozenset

    def __post_init__(self):
        for w in self.words:
            if len(w) > self.cap:
                raise LanguageFormatError(f"word {w!r} exceeds cap {self.cap}")
            for ch in w:
                if ch not in self.alphabet:
                    raise LanguageFormatError(f"word {w!r} uses {ch!r}, not in alphabet")

    def literal(self) -> str:
        return format_language_literal(self)


def parse_language_literal(text: str, alphabet: str, cap: int) -> CappedLanguage:
    """Literals: {} for empty, {_} for the empty word, {ab,ba} otherwise."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise LanguageFormatError(f"language literal must be braced: {text!r}")
    body = text[1:-1]
    if body == "":
        return CappedLanguage(alphabet, cap, frozenset())
    words = []
    for part in body.split(","):
        part = part.strip()
        if part == "_":
            words.append("")
        elif part == "":
            raise LanguageFormatError(f"empty word slot in {text!r} (use _ for the empty word)")
        else:
            words.append(part)
    return CappedLanguage(alphabet, cap, frozenset(words))


def format_language_literal(L: CappedLanguage) -> str:
    if not L.words:
        return "{}"
    shown = sorted("_" if w == "" else w for w in L.words)
    return "{" + ",".join(shown) + "}"


def _same_shape(L1: CappedLanguage, L2: CappedLanguage) -> None:
    if L1.alphabet != L2.alphabet or L1.cap != L2.cap:
        raise AlphabetMismatch(
            f"({L1.alphabet},{L1.cap}) does not match ({L2.alphabet},{L2.cap})")


def language_concat(L1: CappedLanguage, L2: CappedLanguage) -> CappedLanguage:
    _same_shape(L1, L2)
    words = frozenset(u + v for u in L1.words for v in L2.words
                      if len(u) + len(v) <= L1.cap)
    return CappedLanguage(L1.alphabet, L1.cap, words)


def _interleavings(u: str, v: str):
    n, m = len(u), len(v)
    for slots in combinations(range(n + m), n):
        out = [""] * (n + m)
        for i, p in enumerate(slots):
            out[p] = u[i]
        rest = iter(v)
        for i in range(n + m):
            if out[i] == "":
                out[i] = next(rest)
        yield "".join(out)


def language_shuffle(L1: CappedLanguage, L2: CappedLanguage) -> CappedLanguage:
    _same_shape(L1, L2)
    words = set()
    for u in L1.words:
        for v in L2.words:
            if len(u) + len(v) <= L1.cap:
                words.update(_interleavings(u, v))
    return CappedLanguage(L1.alphabet, L1.cap, frozenset(words))


def language_duoid(alphabet: str, cap: int, generators=None,
                   max_elements: int = 64) -> Duoid:
    """Close the generators under capped concat and shuffle.

    Default generators are the single-letter singletons.  The result is a
    duoid on the closure (plus {eps}), ordered by language inclusion, with
    concat as the sequential and shuffle as the parallel multiplication.
    """
    if generators is None:
        generators = [CappedLanguage(alphabet, cap, frozenset({ch}))
                      for ch in alphabet]
    if not generators:
        raise LanguageError("need at least one generator")
    for g in generators:
        if g.alphabet != alphabet or g.cap != cap:
            raise AlphabetMismatch(f"generator {g.literal()} has the wrong shape")
    langs = {CappedLanguage(alphabet, cap, frozenset({""}))}
    langs.update(generators)
    frontier = list(langs)
    while frontier:
        fresh = []
        for L1 in list(langs):
            for L2 in frontier:
                for op in (language_concat, language_shuffle):
                    for R in (op(L1, L2), op(L2, L1)):
                        if R not in langs:
                            langs.add(R)
                            fresh.append(R)
                            if len(langs) > max_elements:
                                raise ClosureExplosion(
                                    f"closure exceeds {max_elements} languages")
        frontier = fresh

    by_literal = {format_language_literal(L): L for L in langs}
    elements = tuple(sorted(by_literal))
    mul = {}
    par = {}
    for e1 in elements:
        for e2 in elements:
            mul[(e1, e2)] = format_language_literal(
                language_concat(by_literal[e1], by_literal[e2]))
            par[(e1, e2)] = format_language_literal(
                language_shuffle(by_literal[e1], by_literal[e2]))
    le_pairs = [(e1, e2) for e1 in elements for e2 in elements
                if by_literal[e1].words <= by_literal[e2].words]
    base = validate_pomonoid(elements, "{_}", mul, le_pairs,
                             name=f"Lang({alphabet},{cap})")
    return Duoid(base=base, par=par, unit2="{_}")


@dataclass
class DuoidalGradedMonad:
    """A graded strong monad together with an interchange map m.

    m(a, b, X, Y) runs an a-graded and a b-graded computation in parallel,
    landing at the parallel product grade.  element_leq, when set, is the
    order on carrier elements used to read the main diagram laxly; without
    it the diagram is checked as an equality.
    """

    monad: GradedStrongMonad
    duoid: Duoid
    m: object
    element_leq: object = None
    name: str = ""
    _memo: dict = field(default_factory=dict, repr=False)

    def m_fn(self, a: str, b: str, X: FinSet, Y: FinSet) -> FinFn:
        key = (a, b, X, Y)
        if key not in self._memo:
            fn = self.m(a, b, X, Y)
            M = self.monad
            dom = tensor(M.carrier(a, X), M.carrier(b, Y))
            cod = M.carrier(self.duoid.par_of(a, b), tensor(X, Y))
            if fn.dom != dom or fn.cod != cod:
                raise LanguageError(f"m({a},{b}) has wrong type")
            self._memo[key] = fn
        return self._memo[key]

    def elements_equal(self, lhs: str, rhs: str) -> bool:
        if self.element_leq is None:
            return lhs == rhs
        return self.element_leq(lhs, rhs)


def _annotation_subset(lhs: str, rhs: str) -> bool:
    """Writer-pair order: same value, smaller language annotation."""
    xl, al = split_pair(lhs)
    xr, ar = split_pair(rhs)
    if xl != xr:
        return False
    left = set(al[1:-1].split(",")) if al != "{}" else set()
    right = set(ar[1:-1].split(",")) if ar != "{}" else set()
    return left <= right


def build_language_writer(alphabet: str, cap: int, duoid: Duoid) -> DuoidalGradedMonad:
    """The writer monad graded by a language duoid.

    An element of T^L X is a value with a sublanguage of L as its log.
    Sequencing concatenates logs, parallel composition shuffles them.  The
    main duoidal diagram holds laxly: running the interchange first can
    only produce a smaller log, so the carriers are compared with the
    annotation-inclusion order.
    """
    P = duoid.base
    parsed = {lit: parse_language_literal(lit, alphabet, cap) for lit in P.elements}

    def subsets(L: CappedLanguage):
        ws = sorted(L.words)
        for r in range(len(ws) + 1):
            for chosen in combinations(ws, r):
                yield CappedLanguage(alphabet, cap, frozenset(chosen))

    carriers = {lit: FinSet(f"P({lit})",
                            tuple(sorted(s.literal() for s in subsets(L))))
                for lit, L in parsed.items()}

    def ann_concat(u: str, v: str) -> str:
        return language_concat(parse_language_literal(u, alphabet, cap),
                               parse_language_literal(v, alphabet, cap)).literal()

    M = writer_monad(P, carriers, ann_concat, "{_}", name=f"lang_writer({alphabet},{cap})")

    def m(a, b, X, Y):
        dom = tensor(M.carrier(a, X), M.carrier(b, Y))
        cod = M.carrier(duoid.par_of(a, b), tensor(X, Y))
        mapping = {}
        for t in dom:
            l, r = split_pair(t)
            x, u = split_pair(l)
            y, v = split_pair(r)
            ann = language_shuffle(parse_language_literal(u, alphabet, cap),
                                   parse_language_literal(v, alphabet, cap))
            mapping[t] = make_pair(make_pair(x, y), ann.literal())
        return FinFn(dom, cod, mapping)

    return DuoidalGradedMonad(monad=M, duoid=duoid, m=m,
                              element_leq=_annotation_subset,
                              name=M.name)


def _quadruples(elements, budget: int, seed: int):
    n = len(elements)
    if n ** 4 <= budget:
        return [(a, b, c, d) for a in elements for b in elements
                for c in elements for d in elements]
    rng = random.Random(seed)
    quads = set()
    # make sure the unit shows up; degenerate corners catch easy bugs
    i = elements[0]
    for a in elements:
        for b in elements:
            quads.add((i, a, b, i))
    while len(quads) < budget:
        quads.add(tuple(rng.choice(elements) for _ in range(4)))
    return sorted(quads)


def _triples(elements, budget: int, seed: int):
    n = len(elements)
    if n ** 3 <= budget:
        return [(a, b, c) for a in elements for b in elements for c in elements]
    rng = random.Random(seed)
    triples = set()
    while len(triples) < budget:
        triples.add(tuple(rng.choice(elements) for _ in range(3)))
    return sorted(triples)


def check_duoidal_gradation(DM: DuoidalGradedMonad, k: int = 2,
                            budget: int = 300, seed: int = 2026) -> Report:
    """Diagram checks for an interchange map over a duoid-graded monad.

    The main diagram compares interchange-then-multiply against
    multiply-then-interchange, transported along the duoid inequality
    (a||c)*(b||d) <= (a*b)||(c*d).  Grade tuples are scanned exhaustively
    when the grading is small and by a seeded deterministic sample above
    the budget.
    """
    M, D = DM.monad, DM.duoid
    P = M.pomonoid
    rep = Report(title=f"duoidal gradation for {DM.name or M.name or 'monad'}")
    sets = canonical_sets(k)

    def transported_pair(g_from, g_to, fn, XY):
        # move fn's output grade to g_to if the order allows it
        if g_from == g_to:
            return fn, True
        if P.le(g_from, g_to):
            return fn.then(M.lift_fn(g_from, g_to, XY)), True
        if M.carrier(g_from, XY) == M.carrier(g_to, XY):
            return fn, True
        return fn, False

    for (a, b, c, d) in _quadruples(P.elements, budget, seed):
        g_par_first = P.times(D.par_of(a, c), D.par_of(b, d))
        g_mul_first = D.par_of(P.times(a, b), P.times(c, d))
        ok, witness, note = True, "", ""
        for X in sets:
            for Y in sets:
                XY = tensor(X, Y)
                inner = DM.m_fn(b, d, X, Y)
                outer = DM.m_fn(a, c, M.carrier(b, X), M.carrier(d, Y))
                par_first = outer.then(M.fmap(D.par_of(a, c), inner)).then(
                    M.mult_fn(D.par_of(a, c), D.par_of(b, d), XY))
                mul_first = tensor_fn(M.mult_fn(a, b, X), M.mult_fn(c, d, Y)).then(
                    DM.m_fn(P.times(a, b), P.times(c, d), X, Y))
                par_first, typed = transported_pair(g_par_first, g_mul_first,
                                                    par_first, XY)
                if not typed:
                    ok, note = False, "delta-unrelated"
                    break
                for t in par_first.dom:
                    if not DM.elements_equal(par_first(t), mul_first(t)):
                        ok, witness = False, t
                        break
                if not ok:
                    break
            if not ok:
                break
        rep.add(LawRecord(law="duoidal-main", grades=(a, b, c, d), ok=ok,
                          witness=witness, note=note))

    i = P.unit
    g_ii = D.par_of(i, i)
    for X in sets:
        for Y in sets:
            XY = tensor(X, Y)
            both_units = tensor_fn(M.unit_fn(X), M.unit_fn(Y)).then(DM.m_fn(i, i, X, Y))
            unit_path, typed = (M.unit_fn(XY), True) if g_ii == i else (
                (M.unit_fn(XY).then(M.lift_fn(i, g_ii, XY)), True)
                if P.le(i, g_ii) else (M.unit_fn(XY), False))
            if not typed:
                rep.add(LawRecord(law="m-unit", grades=(i,), sets=(X.name, Y.name),
                                  ok=False, note="unit-grade-unrelated"))
                continue
            rep.compare("m-unit", (i,), (X.name, Y.name), both_units, unit_path)

    for (a, b, c) in _triples(P.elements, budget, seed):
        ok, witness = True, ""
        for X in sets:
            for Y in sets:
                for Z in sets:
                    TX, TY, TZ = M.carrier(a, X), M.carrier(b, Y), M.carrier(c, Z)
                    lhs = alpha(TX, TY, TZ).then(
                        tensor_fn(identity_fn(TX), DM.m_fn(b, c, Y, Z))).then(
                        DM.m_fn(a, D.par_of(b, c), X, tensor(Y, Z)))
                    rhs = tensor_fn(DM.m_fn(a, b, X, Y), identity_fn(TZ)).then(
                        DM.m_fn(D.par_of(a, b), c, tensor(X, Y), Z)).then(
                        M.fmap(D.par_of(D.par_of(a, b), c), alpha(X, Y, Z)))
                    for t in lhs.dom:
                        if lhs(t) != rhs(t):
                            ok, witness = False, t
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        rep.add(LawRecord(law="m-assoc", grades=(a, b, c), ok=ok, witness=witness))

    I = unit_set()
    for a in P.elements:
        left_grade = D.par_of(i, a)
        right_grade = D.par_of(a, i)
        for X in sets:
            TX = M.carrier(a, X)
            if left_grade == a:
                via_m = tensor_fn(M.unit_fn(I), identity_fn(TX)).then(
                    DM.m_fn(i, a, I, X))
                direct = lam(TX).then(M.fmap(a, lam_inv(X)))
                rep.compare("m-unitor-left", (a,), (X.name,), via_m, direct)
            else:
                rep.add(LawRecord(law="m-unitor-left", grades=(a,), ok=True,
                                  note="skipped: i||a differs from a"))
            if right_grade == a:
                via_m = tensor_fn(identity_fn(TX), M.unit_fn(I)).then(
                    DM.m_fn(a, i, X, I))
                direct = rho(TX).then(M.fmap(a, rho_inv(X)))
                rep.compare("m-unitor-right", (a,), (X.name,), via_m, direct)
            else:
                rep.add(LawRecord(law="m-unitor-right", grades=(a,), ok=True,
                                  note="skipped: a||i differs from a"))

    small = [canonical_set(n) for n in range(min(k, 2) + 1)]
    pairs = [(a, b) for a in P.elements for b in P.elements]
    if len(pairs) > 36:
        rng = random.Random(seed)
        pairs = sorted(set(tuple(rng.choice(P.elements) for _ in range(2))
                           for _ in range(36)))
    for (a, b) in pairs:
        ok, witness = True, ""
        for X in small:
            for X2 in small:
                for Y in small:
                    for Y2 in small:
                        for f in all_fns(X, X2):
                            for g in all_fns(Y, Y2):
                                lhs = tensor_fn(M.fmap(a, f), M.fmap(b, g)).then(
                                    DM.m_fn(a, b, X2, Y2))
                                rhs = DM.m_fn(a, b, X, Y).then(
                                    M.fmap(D.par_of(a, b), tensor_fn(f, g)))
                                for t in lhs.dom:
                                    if lhs(t) != rhs(t):
                                        ok, witness = False, t
                                        break
                                if not ok:
                                    break
                            if not ok:
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        rep.add(LawRecord(law="m-natural", grades=(a, b), ok=ok, witness=witness))
    return rep


def derive_monoidal_m(M: GradedStrongMonad, k: int = 2):
    """For a commutative monad, the two sequencing composites agree and
    define an interchange map with the sequential product as the parallel
    one.  Returns the duoidal structure and the report of its diagrams.
    """
    if not check_commutative(M, k).ok:
        raise NotCommutative("monad is not commutative; no canonical m exists")
    P = M.pomonoid

    def m(a, b, X, Y):
        return commute_maps(M, a, b, X, Y)[0]

    duoid = Duoid(base=P,
                  par={(x, y): P.times(x, y) for x in P.elements for y in P.elements},
                  unit2=P.unit)
    DM = DuoidalGradedMonad(monad=M, duoid=duoid, m=m,
                            name=f"monoidal({M.name})" if M.name else "monoidal")
    return DM, check_duoidal_gradation(DM, k)


def bimonoidal_centre_at(M: GradedStrongMonad, B: Bimonoid, a: str, X: FinSet,
                         bound=None) -> CentralCone:
    """Centrality relative to a commutative over-approximation of the grades.

    The two sequencing composites are lifted into the common grade a(*)b
    before comparison, so grades that only disagree below the
    over-approximation still count as interchangeable.  Any grade may be
    tested, not just central ones.
    """
    if not structurally_equal(B.base, M.pomonoid):
        raise BimonoidMismatch("bimonoid is not over this monad's grading")
    P = M.pomonoid
    survivors = list(M.carrier(a, X))
    for b in P.elements:
        ab, ba, top = P.times(a, b), P.times(b, a), B.par(a, b)
        if not (P.le(ab, top) and P.le(ba, top)):
            raise BimonoidMismatch(
                f"{ab} or {ba} is not below {top}; the relaxed product does not dominate")
        for n in range(bound_for(M, b, bound) + 1):
            Y = canonical_set(n)
            TbY = M.carrier(b, Y)
            if len(TbY) == 0:
                continue
            XY = tensor(X, Y)
            left, right = commute_maps(M, a, b, X, Y)
            left = left.then(M.lift_fn(ab, top, XY))
            right = right.then(M.lift_fn(ba, top, XY))
            for t in list(survivors):
                for s in TbY:
                    p = make_pair(t, s)
                    if left(p) != right(p):
                        survivors.remove(t)
                        break
    apex = FinSet(f"ZB^{a}({X.name})", tuple(survivors))
    leg = FinFn(apex, M.carrier(a, X), {t: t for t in apex})
    return CentralCone(grade=a, base=X, apex=apex, leg=leg)
