"""The twelve worked examples: stated parameters, stated enumerators, and a
runner that rebuilds each code and compares verbatim."""

from dataclasses import dataclass

from .codes import (WeightEnumerator, build_code_direct, build_code_via_walsh,
                    build_gold_code_via_weil, defining_set_db, defining_set_gold, half_set,
                    griesmer_max_d)
from .families import check_gold_admissible, check_monomial_admissible, check_quadproduct_case
from .field import irreducible_polynomials, make_field
from .verifier import predict, verify
from .walsh import tabulate


@dataclass(frozen=True)
class Part:
    label: str
    build: str          # "Db" | "halfset" | "gold"
    b: int
    params: tuple       # (n, k, d) as stated
    enumerator: str
    table: str
    optimal_claim: bool = False


@dataclass(frozen=True)
class Example:
    id: str
    p: int
    m: int
    family: str         # "monomial24" | "quadprod" | "gold"
    args: dict
    parts: tuple
    modulus: str = None


def _ex(id, p, m, family, args, parts, modulus=None):
    return Example(id, p, m, family, args, tuple(parts), modulus)


EXAMPLES = (
    _ex("2.4", 3, 4, "monomial24", {"lambda": "1"}, [
        Part("i", "Db", 0, (40, 4, 24), "1 + 40z^24 + 40z^30", "T1"),
        Part("ii", "Db", 1, (20, 4, 12), "1 + 60z^12 + 20z^18", "T2", optimal_claim=True)]),
    _ex("2.5", 3, 10, "monomial24", {"lambda": "1"}, [
        Part("i", "Db", 0, (29524, 10, 19602), "1 + 29524z^19602 + 29524z^19764", "T1"),
        Part("ii", "Db", 1, (14762, 10, 9720), "1 + 14762z^9720 + 44286z^9882", "T3")]),
    _ex("2.8", 3, 4, "quadprod", {"lambda": "1", "u": "-1", "v": "1"}, [
        Part("", "Db", 0, (26, 4, 12), "1 + 12z^12 + 62z^18 + 6z^24", "T4")]),
    _ex("2.9", 3, 5, "quadprod", {"lambda": "-1", "u": "-1", "v": "1"}, [
        Part("", "Db", 0, (62, 5, 36), "1 + 60z^36 + 162z^42 + 20z^54", "T5")]),
    _ex("2.12", 3, 4, "quadprod", {"lambda": "a", "u": "a^16", "v": "a^8"}, [
        Part("", "Db", 0, (44, 4, 18), "1 + 4z^18 + 72z^30 + 4z^36", "T6")], "x^4-x^3-1"),
    _ex("2.13", 3, 7, "quadprod", {"lambda": "a", "u": "a", "v": "a^17"}, [
        Part("", "Db", 0, (728, 7, 432), "1 + 90z^432 + 2024z^486 + 72z^540", "T7")], "x^7+2x^2+1"),
    _ex("2.15", 3, 4, "quadprod", {"lambda": "1", "u": "-1", "v": "1"}, [
        Part("", "halfset", 0, (13, 4, 6), "1 + 12z^6 + 62z^9 + 6z^12", "T8")]),
    _ex("2.16", 3, 5, "quadprod", {"lambda": "-1", "u": "-1", "v": "1"}, [
        Part("", "halfset", 0, (31, 5, 18), "1 + 60z^18 + 162z^21 + 20z^27", "T9",
             optimal_claim=True)]),
    _ex("2.18", 3, 4, "quadprod", {"lambda": "a", "u": "a^16", "v": "a^8"}, [
        Part("", "halfset", 0, (22, 4, 9), "1 + 4z^9 + 72z^15 + 4z^18", "T10")], "x^4-x^3-1"),
    _ex("2.19", 3, 5, "quadprod", {"lambda": "a", "u": "a", "v": "a^4"}, [
        Part("", "halfset", 0, (40, 5, 18), "1 + 12z^18 + 224z^27 + 6z^36", "T11")], "x^5-x+1"),
    _ex("3.7", 3, 8, "gold", {"lambda": "1", "h": 2}, [
        Part("", "gold", 0, (1700, 8, 972), "1 + 60z^972 + 6480z^1134 + 20z^1458", "T13")]),
    _ex("3.8", 5, 6, "gold", {"lambda": "a^3", "h": 1}, [
        Part("", "gold", 0, (3624, 6, 2500), "1 + 144z^2500 + 15000z^2900 + 480z^3000", "T12")],
        "x^6+x^4-x^3+x^2+2"),
)

BY_ID = {e.id: e for e in EXAMPLES}


@dataclass
class PartResult:
    example: str
    part: Part
    modulus: tuple
    computed: object
    expected: WeightEnumerator
    table_verdict: str
    griesmer_d: int
    check_direct: bool = None

    @property
    def enumerator_match(self):
        return str(self.computed.enumerator()) == self.part.enumerator

    @property
    def params_match(self):
        c = self.computed
        return (c.n, c.dimension, c.min_distance) == self.part.params

    @property
    def ok(self):
        return (self.enumerator_match and self.params_match and self.table_verdict == "match"
                and self.check_direct is not False)

    @property
    def griesmer_note(self):
        d = self.computed.min_distance
        if d == self.griesmer_d:
            return "Griesmer-optimal"
        note = "Griesmer bound admits d = %d" % self.griesmer_d
        if self.part.optimal_claim:
            note += "; stated optimality not confirmed by the bound"
        return note

    @property
    def name(self):
        return self.example + ("(%s)" % self.part.label if self.part.label else "")

    def to_json(self):
        return {"example": self.name, "modulus": list(self.modulus),
                "expected": self.part.enumerator, "got": str(self.computed.enumerator()),
                "params": list(self.part.params), "table": self.part.table,
                "table_verdict": self.table_verdict, "griesmer_max_d": self.griesmer_d,
                "griesmer": self.griesmer_note, "check_direct": self.check_direct,
                "match": self.ok}


def example_function(ex, ctx):
    el = {k: ctx.parse_element(v) for k, v in ex.args.items() if k != "h"}
    if ex.family == "monomial24":
        return check_monomial_admissible(el["lambda"], ctx)
    if ex.family == "quadprod":
        return check_quadproduct_case(el["lambda"], el["u"], el["v"], ctx)
    return check_gold_admissible(el["lambda"], ex.args["h"], ctx)


def _table_params(ex, spec):
    out = {"p": ex.p, "m": ex.m}
    if ex.family == "quadprod":
        out["eta"] = spec.eta
    if ex.family == "gold":
        out["h"] = spec.h
    return out


def run_example(ex, modulus=None, check_direct=False):
    ctx = make_field(ex.p, ex.m, modulus if modulus is not None else ex.modulus)
    spec = example_function(ex, ctx)
    results = []
    f = None if ex.family == "gold" else tabulate(spec, ctx)
    for part in ex.parts:
        if part.build == "gold":
            code = build_gold_code_via_weil(spec.lam, spec.h, ctx)
        elif part.build == "halfset":
            code = build_code_direct(half_set(defining_set_db(f, part.b)))
        else:
            code = build_code_via_walsh(f, part.b)
        direct = None
        if check_direct:
            if part.build == "gold":
                D = defining_set_gold(spec.lam, spec.h, ctx)
            else:
                D = defining_set_db(f, part.b)
                if part.build == "halfset":
                    D = half_set(D)
            direct = build_code_direct(D).same_code_data(code)
        rep = verify(predict(part.table, _table_params(ex, spec)), code)
        results.append(PartResult(ex.id, part, ctx.modulus, code, WeightEnumerator.parse(part.enumerator),
                                  rep.verdict, griesmer_max_d(code.n, code.dimension, ex.p), direct))
    return results


def second_modulus(p, m):
    """The second irreducible in lexicographic order, for modulus-independence runs."""
    it = irreducible_polynomials(p, m)
    next(it)
    return next(it)


def run_examples(only=None, cross_modulus=False, check_direct=False):
    chosen = [BY_ID[i] for i in only] if only else list(EXAMPLES)
    out = []
    for ex in chosen:
        out += run_example(ex, check_direct=check_direct)
        if cross_modulus and ex.modulus is None:
            out += run_example(ex, second_modulus(ex.p, ex.m), check_direct=check_direct)
    return out
