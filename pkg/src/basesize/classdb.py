"""A collection of class tables, fusions, lifts and subgroup counts, plus the
rules that recompute some of those numbers from others.

Each stored item remembers where it came from (file and line) and a
provenance note.  :meth:`ClassData.derive` recomputes every number that can
be obtained from other stored numbers and reports disagreements; in strict
mode any disagreement is an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .classdata import (ClassDataError, ClassTable, FusionMap, IntPoly, LiftSpec,
                        SubgroupClassData, fuse_counts, lift_class_table,
                        lift_involution_counts, perm_char_count)


@dataclass(frozen=True)
class Origin:
    source: str = "<memory>"
    line: int = 0
    provenance: str = ""

    def __str__(self) -> str:
        where = f"{self.source}:{self.line}" if self.line else self.source
        return f"{where} [{self.provenance}]" if self.provenance else where

    @property
    def printed(self) -> bool:
        return self.provenance.replace(",", " ").split()[:1] == ["printed"]


@dataclass(frozen=True)
class CharValue:
    """A permutation character value ``chi(x)`` for the action of ``group`` on
    the cosets of ``subgroup`` (of index ``index``), either an integer or a
    polynomial evaluated at ``q``."""

    subgroup: str
    group: str
    label: str
    index: int
    value: int | None = None
    poly: str | None = None
    q: int | None = None


@dataclass(frozen=True)
class Discrepancy:
    what: str
    stored: int
    derived: int
    origin: Origin
    rule: str

    def __str__(self) -> str:
        return (f"{self.what}: stored {self.stored} ({self.origin}) but {self.rule} "
                f"gives {self.derived} (difference {self.stored - self.derived})")


class StrictModeError(ClassDataError):
    def __init__(self, problems: list[Discrepancy]):
        self.problems = problems
        super().__init__("derived values disagree with stored ones:\n  "
                         + "\n  ".join(str(p) for p in problems))


@dataclass
class ClassData:
    tables: dict[str, ClassTable] = field(default_factory=dict)
    fusions: dict[tuple[str, str], FusionMap] = field(default_factory=dict)
    lifts: dict[tuple[str, str], LiftSpec] = field(default_factory=dict)
    subgroups: dict[tuple[str, str], SubgroupClassData] = field(default_factory=dict)
    polys: dict[str, IntPoly] = field(default_factory=dict)
    charvalues: list[CharValue] = field(default_factory=list)
    origins: dict[tuple, Origin] = field(default_factory=dict)

    # -- lookup ---------------------------------------------------------------

    def table(self, name: str) -> ClassTable:
        try:
            return self.tables[name]
        except KeyError:
            raise ClassDataError(f"no class table for {name}") from None

    def fusion(self, src: str, dst: str) -> FusionMap:
        try:
            return self.fusions[src, dst]
        except KeyError:
            raise ClassDataError(f"no fusion map {src} -> {dst}") from None

    def lift_into(self, quotient: str) -> list[LiftSpec]:
        return [lf for (q, _), lf in self.lifts.items() if q == quotient]

    def subgroup(self, name: str, group: str) -> SubgroupClassData:
        try:
            return self.subgroups[name, group]
        except KeyError:
            raise ClassDataError(f"no counts for {name} in {group}") from None

    def origin(self, *key) -> Origin:
        return self.origins.get(key, Origin())

    # -- merging --------------------------------------------------------------

    def merge(self, other: "ClassData") -> None:
        """Add everything from ``other``; repeated items must agree."""
        for name, t in other.tables.items():
            mine = self.tables.get(name)
            if mine is None:
                mine = self.tables[name] = ClassTable(name, t.order)
            elif mine.order != t.order:
                raise ClassDataError(f"{name}: order {t.order} ({other.origin('group', name)}) "
                                     f"conflicts with {mine.order} ({self.origin('group', name)})")
            for lab, c in t.classes.items():
                old = mine.classes.get(lab)
                if old is not None and old != c:
                    raise ClassDataError(
                        f"{name} class {lab}: {c.element_order} {c.size} "
                        f"({other.origin('class', name, lab)}) conflicts with "
                        f"{old.element_order} {old.size} ({self.origin('class', name, lab)})")
                mine.classes[lab] = c
        for key, f in other.fusions.items():
            mine = self.fusions.setdefault(key, FusionMap(*key))
            for a, b in f.mapping.items():
                if mine.mapping.get(a, b) != b:
                    raise ClassDataError(f"fusion {key[0]} -> {key[1]}: {a} maps to both "
                                         f"{mine.mapping[a]} and {b}")
                mine.mapping[a] = b
        for key, lf in other.lifts.items():
            mine = self.lifts.get(key)
            if mine is None:
                self.lifts[key] = LiftSpec(lf.quotient, lf.extension, lf.central,
                                           dict(lf.rules))
                continue
            if mine.central != lf.central:
                raise ClassDataError(f"lift {key}: central class {lf.central} vs {mine.central}")
            for lab, r in lf.rules.items():
                if mine.rules.get(lab, r) != r:
                    raise ClassDataError(f"lift {key}: two different rules for {lab}")
                mine.rules[lab] = r
        for key, s in other.subgroups.items():
            mine = self.subgroups.get(key)
            if mine is None:
                mine = self.subgroups[key] = SubgroupClassData(s.name, s.group, s.order)
            elif s.order is not None and mine.order not in (None, s.order):
                raise ClassDataError(f"{s.name} in {s.group}: order {s.order} vs {mine.order}")
            mine.order = mine.order if mine.order is not None else s.order
            for lab, n in s.counts.items():
                if mine.counts.get(lab, n) != n:
                    raise ClassDataError(
                        f"{s.name} in {s.group} class {lab}: {n} "
                        f"({other.origin('count', s.name, s.group, lab)}) conflicts with "
                        f"{mine.counts[lab]} ({self.origin('count', s.name, s.group, lab)})")
                mine.counts[lab] = n
        for name, p in other.polys.items():
            if self.polys.get(name, p) != p:
                raise ClassDataError(f"polynomial {name} defined twice differently")
            self.polys[name] = p
        for cv in other.charvalues:
            if cv not in self.charvalues:
                self.charvalues.append(cv)
        for key, o in other.origins.items():
            self.origins.setdefault(key, o)

    def validate(self) -> None:
        for t in self.tables.values():
            t.validate()
        for (src, dst), f in self.fusions.items():
            f.validate(self.tables.get(src), self.tables.get(dst))
        for (q, _), lf in self.lifts.items():
            lf.validate(self.tables.get(q))
        for (name, group), s in self.subgroups.items():
            s.validate(None)
            t = self.tables.get(group)
            if t is not None:
                for lab in s.counts:
                    if lab not in t:
                        raise ClassDataError(f"{name} in {group}: {group} has no class {lab}")
                s.validate(t)

    # -- derivations ----------------------------------------------------------

    def derive(self, strict: bool = False) -> list[Discrepancy]:
        """Recompute what can be recomputed, fill gaps, list disagreements.

        Rules, in order:

        * lifted class tables from a quotient table and a lift spec;
        * counts from permutation character values;
        * counts obtained by fusing a subgroup's own class table;
        * counts for the full preimage of a quotient subgroup, via a lift
          spec and the extension's fusion into the ambient group, for each
          element order the quotient counts cover completely.

        Where a stored number disagrees the derived value replaces it in the
        working data and the disagreement is returned (raised if ``strict``).
        """
        problems: list[Discrepancy] = []

        for (qname, ename), lf in list(self.lifts.items()):
            q = self.tables.get(qname)
            if q is None:
                continue
            lifted = lift_class_table(q, lf)
            ext = self.tables.get(ename)
            if ext is None:
                self.tables[ename] = lifted
                continue
            for lab, c in lifted.classes.items():
                if lab not in ext:
                    if c.element_order <= 2:
                        raise ClassDataError(f"{ename} lacks lifted class {lab}")
                    continue
                if ext.size(lab) != c.size:
                    problems.append(Discrepancy(
                        f"|{lab}| in {ename}", ext.size(lab), c.size,
                        self.origin("class", ename, lab), f"lifting {qname}"))
                    ext.classes[lab] = c
            extra = [lab for lab in ext.labels(2) if lab not in lifted]
            if extra:
                raise ClassDataError(f"{ename} has involution classes {extra} that no lift "
                                     f"rule of {qname} produces")

        derived: dict[tuple[str, str], dict[str, tuple[int, str]]] = {}

        def offer(name, group, lab, value, rule):
            derived.setdefault((name, group), {})[lab] = (value, rule)

        for cv in self.charvalues:
            chi = cv.value
            if chi is None:
                chi = self.polys[cv.poly](cv.q)
            size = self.table(cv.group).size(cv.label)
            offer(cv.subgroup, cv.group, cv.label, perm_char_count(size, cv.index, chi),
                  f"permutation character value {chi}")
        self._settle(derived, problems)

        for (src, dst), f in self.fusions.items():
            t = self.tables.get(src)
            if t is None or dst not in self.tables:
                continue
            fused = fuse_counts(t, f, self.tables[dst])
            # a table listing some class of element order r lists all of them;
            # orders not dividing |src| give zero by Lagrange
            listed = {c.element_order for c in t.classes.values()}
            for c in self.tables[dst].classes.values():
                if c.element_order in listed or t.order % c.element_order:
                    offer(src, dst, c.label, fused.counts.get(c.label, 0), f"fusing {src}")
            key = (src, dst)
            if key not in self.subgroups:
                self.subgroups[key] = SubgroupClassData(src, dst, t.order)
        self._settle(derived, problems)

        # lifted counts can feed further lifts, so repeat until nothing moves
        for _ in range(len(self.lifts) + 1):
            for (name, qname), s in list(self.subgroups.items()):
                q = self.tables.get(qname)
                if q is None:
                    continue
                for lf in self.lift_into(qname):
                    for (src, gname), f in self.fusions.items():
                        if src != lf.extension or gname not in self.tables:
                            continue
                        self._lift_subgroup(s, q, lf, f, offer)
            if not self._settle(derived, problems):
                break

        if strict and problems:
            raise StrictModeError(problems)
        return problems

    def _lift_subgroup(self, s, q, lf, f, offer):
        by_order: dict[int, list[str]] = {}
        for c in q.classes.values():
            if c.element_order > 1 and (c.element_order == 2 or c.element_order % 2):
                by_order.setdefault(c.element_order, []).append(c.label)
        ambient = self.tables[f.target]
        for r, labels in by_order.items():
            if not all(lab in s.counts for lab in labels):
                continue
            part = {lab: s.counts[lab] for lab in labels}
            lifted = lift_involution_counts(part, lf, f, q, s.name)
            for lab in ambient.labels(r):
                offer(s.name, f.target, lab, lifted.counts.get(lab, 0),
                      f"lifting through {lf.extension}")
            key = (s.name, f.target)
            if key not in self.subgroups:
                order = None if s.order is None else 2 * s.order
                self.subgroups[key] = SubgroupClassData(s.name, f.target, order)
        if s.order is not None and by_order:
            # primes of the ambient group not dividing the preimage order
            for c in ambient.prime_classes():
                if (2 * s.order) % c.element_order:
                    offer(s.name, f.target, c.label, 0, "Lagrange")

    def _settle(self, derived, problems) -> bool:
        """Write offered values into the working data; True if any changed."""
        changed = False
        for (name, group), vals in derived.items():
            s = self.subgroups.get((name, group))
            if s is None:
                s = self.subgroups[name, group] = SubgroupClassData(name, group)
            for lab, (value, rule) in vals.items():
                old = s.counts.get(lab)
                stale = self.origin("count", name, group, lab).source == "derived"
                if old is not None and old != value and not stale:
                    problems.append(Discrepancy(
                        f"|{lab} cap {name}| in {group}", old, value,
                        self.origin("count", name, group, lab), rule))
                s.counts[lab] = value
                changed = changed or old != value
                if old is None:
                    self.origins[("count", name, group, lab)] = Origin(
                        "derived", 0, f"derived by {rule}")
        derived.clear()
        return changed


def load_stored(path: str | Path) -> ClassData:
    """Read every ``*.cls`` file under ``path``, merge and validate, without
    deriving anything."""
    from .formats import parse_class_data

    data = ClassData()
    files = sorted(Path(path).glob("*.cls"))
    if not files:
        raise ClassDataError(f"no .cls files in {path}")
    for p in files:
        data.merge(parse_class_data(p.read_text(encoding="utf-8"), source=p.name))
    data.validate()
    return data


def load_directory(path: str | Path, strict: bool = False) -> tuple[ClassData, list[Discrepancy]]:
    """Read every ``*.cls`` file under ``path``, merge, validate and derive."""
    data = load_stored(path)
    problems = data.derive(strict=strict)
    return data, problems
