"""Checked Q-hat reports for maximal subgroups of the Monster and the Baby Monster.

A report definition lists, for each subgroup, named contributions (odd primes,
involutions, ...) made of terms.  A term is either exact, summing
``|x^G| fpr(x)^c`` over named classes, or a bound ``b (a/b)^c`` from a count
``a`` of elements and a lower bound ``b`` on the class sizes involved.  Every
comparison is done with :class:`fractions.Fraction`.

Inputs remember their provenance, so a rendered report says which numbers
were printed in the literature and which were exported from a character
table library.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Sequence

from .classdata import ClassDataError, lemma_bound, lie_group_order, qhat
from .classdb import ClassData, Discrepancy, Origin, load_directory, load_stored

ORDER_SETS: dict[str, Callable[[int], bool]] = {
    "2": lambda r: r == 2,
    "3": lambda r: r == 3,
    "odd": lambda r: r % 2 == 1,
    ">=5": lambda r: r >= 5,
    "all": lambda r: True,
}


def data_dir():
    return resources.files("basesize") / "data" / "classes"


def load_data(path=None, strict: bool = False) -> tuple[ClassData, list[Discrepancy]]:
    """Load the shipped class data (or ``path``) and run the derivations."""
    return load_directory(path if path is not None else str(data_dir()), strict=strict)


# -- quantities -----------------------------------------------------------

@dataclass(frozen=True)
class Value:
    symbol: str
    value: int
    source: str

    def __str__(self) -> str:
        return f"{self.symbol} = {self.value}  [{self.source}]"


@dataclass(frozen=True)
class Const:
    """A number written into the report definition itself."""
    symbol: str
    value: int
    source: str = "printed"

    def resolve(self, data: ClassData) -> Value:
        return Value(self.symbol, self.value, self.source)


@dataclass(frozen=True)
class ElementCount:
    """Elements of prime order in ``orders`` of a group with a class table,
    optionally as ``2n + 1`` (the count in a central extension by an involution)."""
    symbol: str
    table: str
    orders: str
    extended: bool = False

    def resolve(self, data: ClassData) -> Value:
        t = data.table(self.table)
        keep = ORDER_SETS[self.orders]
        n = sum(c.size for c in t.prime_classes() if keep(c.element_order))
        src = _provenance(data, "group", self.table)
        if self.extended:
            return Value(self.symbol, 2 * n + 1, f"2 i + 1 from the classes of {self.table}; {src}")
        return Value(self.symbol, n, f"classes of {self.table}; {src}")


@dataclass(frozen=True)
class PrimeCount:
    """Elements of one prime order ``r`` in a group with a class table."""
    symbol: str
    table: str
    r: int

    def resolve(self, data: ClassData) -> Value:
        t = data.table(self.table)
        return Value(self.symbol, t.count_of_order(self.r),
                     f"classes of {self.table}; {_provenance(data, 'group', self.table)}")


@dataclass(frozen=True)
class MinClass:
    """The smallest class of ``table`` among elements with order in ``orders``
    (a key of ``ORDER_SETS`` or a single prime)."""
    symbol: str
    table: str
    orders: str | int

    def resolve(self, data: ClassData) -> Value:
        t = data.table(self.table)
        if isinstance(self.orders, int):
            keep = self.orders.__eq__
        else:
            keep = ORDER_SETS[self.orders]
        cls = [c for c in t.prime_classes() if keep(c.element_order)]
        if not cls:
            raise ClassDataError(f"{self.table} has no prime classes of order {self.orders}")
        c = min(cls, key=lambda c: (c.size, c.label))
        return Value(self.symbol, c.size, f"|{c.label}| in {self.table}; "
                     + _provenance(data, "class", self.table, c.label))


@dataclass(frozen=True)
class SubgroupOrder:
    symbol: str
    subgroup: str
    group: str

    def resolve(self, data: ClassData) -> Value:
        s = data.subgroup(self.subgroup, self.group)
        if s.order is None:
            raise ClassDataError(f"{self.subgroup} in {self.group} has no order")
        return Value(self.symbol, s.order,
                     _provenance(data, "subgroupdata", self.subgroup, self.group))


def _provenance(data: ClassData, *key) -> str:
    o: Origin = data.origin(*key)
    return o.provenance or "unknown provenance"


# -- terms ----------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    label: str
    value: Fraction
    method: str
    inputs: tuple[Value, ...]


@dataclass(frozen=True)
class Exact:
    """``sum |x^G| (n_x/|x^G|)^c`` over classes of ``group``, counts from ``subgroup``.

    Classes are given by label, or by an order set (all prime classes of
    those orders, every one of which must carry a count)."""
    label: str
    group: str
    subgroup: str
    classes: tuple[str, ...] = ()
    orders: str | None = None

    def evaluate(self, data: ClassData, c: int) -> Term:
        t = data.table(self.group)
        s = data.subgroup(self.subgroup, self.group)
        labels = list(self.classes)
        if self.orders is not None:
            keep = ORDER_SETS[self.orders]
            labels = [x.label for x in t.prime_classes() if keep(x.element_order)]
        inputs, total = [], Fraction(0)
        for lab in labels:
            if lab not in s.counts:
                raise ClassDataError(f"{self.subgroup} in {self.group}: no count for {lab}")
            n, size = s.counts[lab], t.size(lab)
            total += lemma_bound(n, size, c)
            inputs.append(Value(f"|{lab} cap {self.subgroup}|", n,
                                _provenance(data, "count", self.subgroup, self.group, lab)))
            inputs.append(Value(f"|{lab}|", size, _provenance(data, "class", self.group, lab)))
        return Term(self.label, total, "exact", tuple(inputs))


@dataclass(frozen=True)
class Bound:
    """``b (a/b)^c``: ``a`` elements, each in a class of size at least ``b``."""
    label: str
    a: object
    b: object

    def evaluate(self, data: ClassData, c: int) -> Term:
        a, b = self.a.resolve(data), self.b.resolve(data)
        return Term(self.label, lemma_bound(a.value, b.value, c), "bound", (a, b))


# -- structure ------------------------------------------------------------

@dataclass(frozen=True)
class ContributionDef:
    name: str
    terms: tuple
    below: Fraction | None = None
    below_text: str = ""


@dataclass(frozen=True)
class CheckDef:
    """``left == right`` (or ``left <= right`` with ``relation='<='``)."""
    text: str
    left: object
    right: object
    relation: str = "=="


@dataclass(frozen=True)
class ExactQhatDef:
    """Second route: the exact Q-hat over every prime class must stay at or
    below the sum of the contributions and below 1."""
    group: str
    subgroup: str


@dataclass(frozen=True)
class CaseDef:
    group: str
    subgroup: str
    c: int
    contributions: tuple[ContributionDef, ...]
    checks: tuple = ()
    exact: ExactQhatDef | None = None
    note: str = ""


@dataclass(frozen=True)
class ReportDefinition:
    title: str
    cases: tuple[CaseDef, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Contribution:
    name: str
    terms: tuple[Term, ...]
    below: Fraction | None
    below_text: str

    @property
    def value(self) -> Fraction:
        return sum((t.value for t in self.terms), Fraction(0))

    @property
    def holds(self) -> bool:
        return self.below is None or self.value < self.below


@dataclass(frozen=True)
class Check:
    text: str
    left: Value
    right: Value
    relation: str

    @property
    def holds(self) -> bool:
        if self.relation == "==":
            return self.left.value == self.right.value
        return self.left.value <= self.right.value


@dataclass(frozen=True)
class Case:
    group: str
    subgroup: str
    c: int
    contributions: tuple[Contribution, ...]
    checks: tuple[Check, ...]
    exact_qhat: Fraction | None
    note: str

    @property
    def total(self) -> Fraction:
        return sum((x.value for x in self.contributions), Fraction(0))

    @property
    def failures(self) -> list[str]:
        out = []
        for x in self.contributions:
            if not x.holds:
                out.append(f"{x.name} = {float(x.value):.6g} is not below {x.below_text}")
        if not self.total < 1:
            out.append(f"total {float(self.total):.6g} is not below 1")
        for ch in self.checks:
            if not ch.holds:
                out.append(f"check failed: {ch.text}")
        if self.exact_qhat is not None:
            if not self.exact_qhat <= self.total:
                out.append("exact Q-hat exceeds the bound")
            if not self.exact_qhat < 1:
                out.append("exact Q-hat is not below 1")
        return out

    @property
    def holds(self) -> bool:
        return not self.failures


@dataclass
class Report:
    title: str
    cases: list[Case]
    discrepancies: list[Discrepancy] = field(default_factory=list)
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.cases)

    def case(self, subgroup: str) -> Case:
        for c in self.cases:
            if c.subgroup == subgroup:
                return c
        raise KeyError(subgroup)

    def render(self, verbose: bool = True) -> str:
        out = [f"== {self.title} =="]
        for d in self.discrepancies:
            out.append(f"data: {d}")
        for case in self.cases:
            out.append("")
            out.append(f"{case.subgroup} < {case.group}, c = {case.c}: "
                       f"{'PASS' if case.holds else 'FAIL'}")
            if case.note:
                out.append(f"  note: {case.note}")
            for x in case.contributions:
                bound = f" < {x.below_text}" if x.below is not None else ""
                mark = "ok" if x.holds else "VIOLATED"
                out.append(f"  {x.name} = {_show(x.value)}{bound}  [{mark}]")
                if verbose:
                    for t in x.terms:
                        out.append(f"    {t.label} ({t.method}) = {_show(t.value)}")
                        for v in t.inputs:
                            out.append(f"      {v}")
            out.append(f"  total = {_show(case.total)} < 1  [{'ok' if case.total < 1 else 'VIOLATED'}]")
            if case.exact_qhat is not None:
                out.append(f"  exact Q-hat over all prime classes = {_show(case.exact_qhat)}")
            for ch in case.checks:
                out.append(f"  check: {ch.text}: {ch.left.value} {ch.relation} {ch.right.value} "
                           f"[{'ok' if ch.holds else 'FAILED'}]")
        for n in self.notes:
            out.append(f"note: {n}")
        out.append("")
        out.append(f"{'ALL PASS' if self.ok else 'FAILURES'}: "
                   f"{sum(c.holds for c in self.cases)}/{len(self.cases)} cases")
        return "\n".join(out)


def _show(x: Fraction) -> str:
    if x == 0:
        return "0"
    return f"{x.numerator}/{x.denominator} (~{float(x):.4g})"


def verify_report(definition: ReportDefinition, data: ClassData,
                  discrepancies: Sequence[Discrepancy] = ()) -> Report:
    """Evaluate every term exactly and compare against its stated bound.

    Missing data raises :class:`ClassDataError`; failed inequalities show up
    in :attr:`Report.ok` and in the rendered text.
    """
    cases = []
    for cd in definition.cases:
        contribs = []
        for con in cd.contributions:
            terms = tuple(t.evaluate(data, cd.c) for t in con.terms)
            contribs.append(Contribution(con.name, terms, con.below, con.below_text))
        checks = tuple(Check(ch.text, ch.left.resolve(data), ch.right.resolve(data), ch.relation)
                       for ch in cd.checks)
        exact = None
        if cd.exact is not None:
            exact = qhat(data.table(cd.exact.group),
                         data.subgroup(cd.exact.subgroup, cd.exact.group), cd.c)
        cases.append(Case(cd.group, cd.subgroup, cd.c, tuple(contribs), checks, exact, cd.note))
    return Report(definition.title, cases, list(discrepancies), definition.notes)


# -- the three suites -----------------------------------------------------

# Subgroups whose involutions need exact counts rather than 2 i_2 + 1.
MONSTER_EXACT_INVOLUTIONS = ("2.2E6(2):2", "2^(1+22).Co2", "Fi23", "2^(9+16).S8(2)")
MONSTER_FINE_ORDER_3 = "2.2E6(2):2"
# maximal subgroups of B whose class table is shipped without a fusion into B
MONSTER_MAXES_WITHOUT_FUSION = ("(2^2xF4(2)):2",)


def monster_definition(data: ClassData) -> ReportDefinition:
    """b(M, K) = 2 for every maximal subgroup K of 2.B, where K/Z runs over
    the maximal subgroups of B listed in the data (c = 2)."""
    maxes = [src for (src, dst) in data.fusions if dst == "B" and src in data.tables]
    maxes += [n for n in MONSTER_MAXES_WITHOUT_FUSION if n in data.tables and n not in maxes]
    cases = []
    for name in sorted(maxes, key=lambda n: (-data.tables[n].order, n)):
        t = data.tables[name]
        odd = []
        for r in t.prime_orders():
            if r == 2:
                continue
            if name == MONSTER_FINE_ORDER_3 and r == 3:
                odd.append(Exact("r = 3", "M", name, ("3A", "3B")))
                continue
            odd.append(Bound(f"r = {r}", PrimeCount(f"i_{r}", name, r),
                             MinClass(f"min |x^M|, |x| = {r}", "M", r)))
        if name in MONSTER_EXACT_INVOLUTIONS:
            inv = (Exact("2A, 2B", "M", name, ("2A", "2B")),)
        else:
            inv = (Bound("all involutions", ElementCount("2 i_2 + 1", name, "2", extended=True),
                         MinClass("|2A|", "M", "2")),)
        exact = ExactQhatDef("M", name) if (name, "M") in data.subgroups and \
            _covers(data, name, "M") else None
        cases.append(CaseDef(
            "M", name, 2,
            (ContributionDef("alpha (odd primes)", tuple(odd), Fraction(1, 64), "2^-6"),
             ContributionDef("beta (involutions)", inv, Fraction(1, 4), "2^-2")),
            exact=exact,
            note="" if exact else "no fusion into B stored; bounds from the class table only"))
    return ReportDefinition(
        "Monster: maximal subgroups of 2.B, c = 2", tuple(cases),
        ("subgroups are named by their image in B; each case bounds Q-hat(M, K, 2)",))


def _covers(data: ClassData, name: str, group: str) -> bool:
    s = data.subgroups[name, group]
    return all(c.label in s.counts for c in data.table(group).prime_classes())


PARABOLICS = ("P1,6", "P2", "P3,5", "P4")


def baby_parabolic_definition(data: ClassData) -> ReportDefinition:
    """b(B, M) <= 3 for the preimages M of the maximal parabolics of 2E6(2):2."""
    a = Const("a = |P2|", 38574303876218880)
    cases = []
    for p in PARABOLICS:
        cases.append(CaseDef(
            "B", p, 3,
            (ContributionDef("alpha (order >= 5)",
                             (Bound("|M/Z| <= |P2|", a, MinClass("|5A|", "B", ">=5")),),
                             Fraction(2, 3), "2/3"),
             ContributionDef("beta (order 3)", (Exact("3A, 3B", "B", p, ("3A", "3B")),),
                             Fraction(1, 2 ** 19), "2^-19"),
             ContributionDef("gamma (involutions)",
                             (Exact("2A-2D", "B", p, ("2A", "2B", "2C", "2D")),),
                             Fraction(1, 2 ** 10), "2^-10")),
            checks=(CheckDef(f"|{p}| <= |P2|", SubgroupOrder(f"|{p}|", p, "2E6(2):2")
                             if (p, "2E6(2):2") in data.subgroups else
                             _half_order(data, p), a, "<="),)))
    return ReportDefinition("Baby Monster: parabolic subgroups, c = 3", tuple(cases))


def _half_order(data: ClassData, p: str) -> Const:
    s = data.subgroup(p, "B")
    return Const(f"|{p}|", s.order // 2, _provenance(data, "subgroupdata", p, "B"))


def baby_nonparabolic_definition(data: ClassData) -> ReportDefinition:
    """b(B, M) <= 3 for the non-parabolic maximal subgroups that need Q-hat."""
    two_a = MinClass("|2A|", "B", "2")
    three_a = MinClass("|3A|", "B", "odd")
    five_a = MinClass("|5A|", "B", ">=5")
    two_b = Const("|2B|", data.table("B").size("2B"), _provenance(data, "class", "B", "2B"))
    cases = [
        CaseDef("B", "(U3(2):2xG2(2)) type SU3(2)xG2(2)", 3, (
            ContributionDef("all prime orders",
                            (Bound("|M|", Const("a1 = |M|", 3483648), two_a),), None),)),
        CaseDef("B", "U3(8):6 type SU3(8)", 3, (
            ContributionDef("odd primes", (Bound("|M|", Const("a1 = |M|", 66189312), three_a),)),
            ContributionDef("involutions", (Bound("2 i_2 + 1", Const("a2 = 2*14535+1", 29071), two_a),)))),
        CaseDef("B", "S3xO8+(2):S3 type 3xO8+(2)", 3, (
            ContributionDef("odd primes", (Bound("|M|", Const("a1 = |M|", 2 * 6 * 6 * lie_group_order("O+", 8, 2),
                                                         "derived, 2 |S3| |O8+(2)| |S3|"), three_a),)),
            ContributionDef("involutions", (Bound("2 i_2 + 1", Const("a2 = 2*733503+1", 1467007), two_a),)))),
        CaseDef("B", "S3xU6(2):2 type SL2(2)xSU6(2)", 3, (
            ContributionDef("odd primes", (Bound("|M|", Const("a1 = |M|", 220723937280), three_a),)),
            ContributionDef("involutions in 2B, 2C, 2D",
                            (Bound("2 i_2 + 1", Const("a2 = 2*2872191+1", 5744383), two_b),)),
            ContributionDef("involutions in 2A",
                            (Bound("1 + 696 + 6336", Const("a3 = 1+696+6336", 7033), two_a),)))),
    ]
    for name, inv_below, inv_text in (("O10-(2)", Fraction(1, 2 ** 24), "2^-24"),
                                      ("SO7(3)", None, ""), ("Fi22:2", None, "")):
        note = ""
        if name == "O10-(2)":
            odd_a = Const("a = odd prime order elements", 4547907351296)
            odd = (Bound("a vs |3A|", odd_a, three_a),)
        else:
            # one bound for all odd primes against |3A| is too weak for Fi22:2
            # (about 46), so each prime is bounded on its own
            odd = tuple(Bound(f"r = {r}", PrimeCount(f"i_{r}", name, r),
                              MinClass(f"min |x^B|, |x| = {r}", "B", r))
                        for r in data.table(name).prime_orders() if r != 2)
            note = "odd primes bounded one prime at a time"
        exact = ExactQhatDef("B", name) if (name, "B") in data.subgroups and \
            _covers(data, name, "B") else None
        checks = ()
        if name == "O10-(2)":
            checks = (CheckDef("printed odd prime count against the class table", odd_a,
                               ElementCount("i_odd", name, "odd")),)
        cases.append(CaseDef("B", name, 3, (
            ContributionDef("involutions", (Exact("2A-2D", "B", name, ("2A", "2B", "2C", "2D")),),
                            inv_below, inv_text),
            ContributionDef("odd primes", odd)),
            checks=checks, exact=exact, note=note))
    f4_checks = ()
    if "F4(2)" in data.tables:
        f4_checks = (CheckDef("i_3 against the class table of F4(2)",
                              Const("a1", 72489697280), PrimeCount("i_3(F4(2))", "F4(2)", 3)),
                     CheckDef("i_r, r >= 5, against the class table of F4(2)",
                              Const("a2", 650797277773824), ElementCount("i_>=5(F4(2))", "F4(2)", ">=5")))
    cases.append(CaseDef("B", "F4(2)x2", 3, (
        ContributionDef("involutions", (Exact("2A-2D", "B", "F4(2)x2", ("2A", "2B", "2C", "2D")),),
                        Fraction(1, 2 ** 15), "2^-15"),
        ContributionDef("order 3", (Bound("i_3 vs |3A|", Const("a1 = i_3", 72489697280), three_a),)),
        ContributionDef("order >= 5", (Bound("i_>=5 vs |5A|", Const("a2 = i_>=5", 650797277773824),
                                             five_a),))),
        checks=f4_checks))
    return ReportDefinition(
        "Baby Monster: non-parabolic subgroups, c = 3", tuple(cases),
        ("types SU3(2)^3 and SL3(2)xSL3(4) are settled by a regular orbit of the quotient "
         "(cited, not recomputed here)",))


SUITES = {
    "monster": monster_definition,
    "baby-parabolics": baby_parabolic_definition,
    "baby-nonparabolic": baby_nonparabolic_definition,
}


def run_suite(name: str, path=None, strict: bool = False) -> Report:
    data, problems = load_data(path, strict=strict)
    return verify_report(SUITES[name](data), data, problems)


# -- reconstruction of stored cells ---------------------------------------

@dataclass(frozen=True)
class Cell:
    subgroup: str
    group: str
    label: str
    stored: int
    derived: int | None
    rule: str = ""

    @property
    def status(self) -> str:
        if self.derived is None:
            return "no raw input"
        return "reproduced" if self.derived == self.stored else "differs"


def reconstruct_cells(subgroups: Sequence[str], group: str, labels: Sequence[str],
                      path=None) -> list[Cell]:
    """Recompute stored counts ``|x^G cap M|`` from everything else.

    The stored cells are removed before the derivation rules run, so a
    derived value can only come from raw inputs (class tables, fusions, lift
    rules, character values and counts in other groups).
    """
    stored = load_stored(path if path is not None else str(data_dir()))
    work = copy.deepcopy(stored)
    for name in subgroups:
        work.subgroups.pop((name, group), None)
    work.derive()
    cells = []
    for name in subgroups:
        have = stored.subgroup(name, group).counts
        got = work.subgroups.get((name, group))
        for lab in labels:
            d = None if got is None else got.counts.get(lab)
            rule = "" if d is None else work.origin("count", name, group, lab).provenance
            cells.append(Cell(name, group, lab, have[lab], d, rule))
    return cells
