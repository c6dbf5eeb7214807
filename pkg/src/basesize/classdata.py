"""Fixed point ratio arithmetic over conjugacy class data.

Groups too large to handle as permutations are described by their classes
of prime order (label, element order, size), by fusion maps between such
tables, and by the way involutions lift through a central extension of
order 2.  Everything here is exact: integers and ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Mapping


class ClassDataError(ValueError):
    """Inconsistent or incomplete class data."""


class CoverageError(ClassDataError):
    """A prime-order class has no recorded intersection count."""


class NonIntegralError(ClassDataError):
    """An exact quotient that should be an integer is not."""


# -- data model -----------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyClass:
    label: str
    element_order: int
    size: int


@dataclass
class ClassTable:
    """Some conjugacy classes of a group (typically those of prime order)."""

    name: str
    order: int
    classes: dict[str, ConjugacyClass] = field(default_factory=dict)

    def add(self, label: str, element_order: int, size: int) -> None:
        if label in self.classes:
            raise ClassDataError(f"{self.name}: duplicate class label {label}")
        self.classes[label] = ConjugacyClass(label, element_order, size)

    def validate(self) -> None:
        if self.order < 1:
            raise ClassDataError(f"{self.name}: order must be positive")
        for c in self.classes.values():
            if c.element_order < 1:
                raise ClassDataError(f"{self.name}: class {c.label} has element order < 1")
            if c.size < 1 or self.order % c.size:
                raise ClassDataError(
                    f"{self.name}: class {c.label} size {c.size} does not divide {self.order}")
            if c.element_order == 1 and c.size != 1:
                raise ClassDataError(f"{self.name}: identity class {c.label} has size {c.size}")
            if c.element_order > 1 and self.order % c.element_order:
                raise ClassDataError(
                    f"{self.name}: element order {c.element_order} does not divide {self.order}")

    def __contains__(self, label: str) -> bool:
        return label in self.classes

    def __getitem__(self, label: str) -> ConjugacyClass:
        try:
            return self.classes[label]
        except KeyError:
            raise ClassDataError(f"{self.name} has no class {label}") from None

    def size(self, label: str) -> int:
        return self[label].size

    def element_order(self, label: str) -> int:
        return self[label].element_order

    def labels(self, element_order: int | None = None) -> list[str]:
        return [c.label for c in self.classes.values()
                if element_order is None or c.element_order == element_order]

    def prime_classes(self) -> list[ConjugacyClass]:
        return [c for c in self.classes.values() if is_prime(c.element_order)]

    def count_of_order(self, r: int) -> int:
        """``i_r``: the number of elements of order r among the listed classes."""
        return sum(c.size for c in self.classes.values() if c.element_order == r)

    def min_size(self, r: int) -> int:
        """Smallest size of a listed class of elements of order r."""
        sizes = [c.size for c in self.classes.values() if c.element_order == r]
        if not sizes:
            raise ClassDataError(f"{self.name} lists no class of elements of order {r}")
        return min(sizes)

    def prime_orders(self) -> list[int]:
        return sorted({c.element_order for c in self.prime_classes()})


@dataclass
class FusionMap:
    source: str
    target: str
    mapping: dict[str, str] = field(default_factory=dict)

    def add(self, src: str, dst: str) -> None:
        if src in self.mapping:
            raise ClassDataError(f"fusion {self.source} -> {self.target}: {src} mapped twice")
        self.mapping[src] = dst

    def __getitem__(self, label: str) -> str:
        try:
            return self.mapping[label]
        except KeyError:
            raise ClassDataError(
                f"fusion {self.source} -> {self.target} does not map {label}") from None

    def validate(self, source: ClassTable | None = None, target: ClassTable | None = None
                 ) -> None:
        """Every listed source class is mapped, to a class of the same element order."""
        if source is not None:
            missing = [lab for lab in source.classes if lab not in self.mapping]
            if missing:
                raise ClassDataError(
                    f"fusion {self.source} -> {self.target} leaves {', '.join(missing)} unmapped")
        if source is None or target is None:
            return
        for src, dst in self.mapping.items():
            if src not in source:
                raise ClassDataError(f"fusion source {self.source} has no class {src}")
            if dst not in target:
                raise ClassDataError(f"fusion target {self.target} has no class {dst}")
            if source.element_order(src) != target.element_order(dst):
                raise ClassDataError(
                    f"fusion {self.source} -> {self.target} maps {src} (order "
                    f"{source.element_order(src)}) to {dst} (order {target.element_order(dst)})")


BEHAVIOURS = ("split", "identified", "order-doubled")


@dataclass(frozen=True)
class LiftRule:
    behaviour: str
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        want = {"split": 2, "identified": 1, "order-doubled": 0}.get(self.behaviour)
        if want is None:
            raise ClassDataError(f"unknown lift behaviour {self.behaviour!r}")
        if len(self.labels) != want:
            raise ClassDataError(f"{self.behaviour} needs {want} lifted labels, "
                                 f"got {len(self.labels)}")


@dataclass
class LiftSpec:
    """How the involution classes of ``quotient = extension / <z>`` lift.

    For an involution ``x`` of the quotient with preimages ``x, zx`` in the
    extension: *split* means both are involutions in two different classes,
    *identified* means they are conjugate (one class of twice the size), and
    *order-doubled* means the preimages have order 4.  Classes of odd order
    lift to a class with the same label and size.
    """

    quotient: str
    extension: str
    central: str
    rules: dict[str, LiftRule] = field(default_factory=dict)

    def add(self, label: str, rule: LiftRule) -> None:
        if label in self.rules:
            raise ClassDataError(f"lift {self.quotient}: duplicate rule for {label}")
        self.rules[label] = rule

    def validate(self, quotient: ClassTable | None = None) -> None:
        targets = [lab for r in self.rules.values() for lab in r.labels]
        if self.central in targets:
            raise ClassDataError(f"lift {self.quotient}: central class {self.central} "
                                 "is also a lifted class")
        if len(set(targets)) != len(targets):
            raise ClassDataError(f"lift {self.quotient}: a lifted label is used twice")
        if quotient is not None:
            for lab in self.rules:
                if lab not in quotient:
                    raise ClassDataError(f"lift rule for unknown class {lab} of {quotient.name}")
                if quotient.element_order(lab) != 2:
                    raise ClassDataError(f"lift rule for {lab}, which is not an involution class")
            missing = [lab for lab in quotient.labels(2) if lab not in self.rules]
            if missing:
                raise ClassDataError(
                    f"lift {self.quotient}: no rule for {', '.join(missing)}")


@dataclass
class SubgroupClassData:
    """``|x^G cap H|`` for classes ``x^G`` of an ambient group G."""

    name: str
    group: str
    order: int | None = None
    counts: dict[str, int] = field(default_factory=dict)

    def validate(self, ambient: ClassTable | None = None) -> None:
        for lab, n in self.counts.items():
            if n < 0:
                raise ClassDataError(f"{self.name} in {self.group}: negative count for {lab}")
            if self.order is not None and n > self.order:
                raise ClassDataError(
                    f"{self.name} in {self.group}: count {n} for {lab} exceeds order {self.order}")
            if ambient is not None and n > ambient.size(lab):
                raise ClassDataError(
                    f"{self.name} in {self.group}: count {n} for {lab} exceeds class size")


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in q, coefficients in ascending degree."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "IntPoly":
        """Build from ``{degree: coefficient}``."""
        n = max(terms, default=-1) + 1
        return cls(tuple(terms.get(i, 0) for i in range(n)))

    def __call__(self, q: int) -> int:
        return poly_eval(self, q)

    def __str__(self) -> str:
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[d]
            if a == 0:
                continue
            mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
            coef = str(a) if (a != 1 or d == 0) else ""
            parts.append(coef + mono)
        return " + ".join(parts) or "0"


# -- arithmetic -----------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def fpr(table: ClassTable, data: SubgroupClassData, label: str) -> Fraction:
    """Fixed point ratio ``|x^G cap H| / |x^G|``."""
    if label not in data.counts:
        raise ClassDataError(f"{data.name} has no count for class {label}")
    return Fraction(data.counts[label], table.size(label))


def qhat_terms(table: ClassTable, data: SubgroupClassData, c: int,
               element_orders: Iterable[int] | None = None) -> dict[str, Fraction]:
    """Per-class terms ``|x^G| fpr(x)^c`` over the prime-order classes.

    Every prime-order class (restricted to ``element_orders`` if given) must
    carry a count, zero included; an absent count is an error.
    """
    want = None if element_orders is None else set(element_orders)
    terms = {}
    missing = []
    for cl in table.prime_classes():
        if want is not None and cl.element_order not in want:
            continue
        if cl.label not in data.counts:
            missing.append(cl.label)
            continue
        terms[cl.label] = lemma_bound(data.counts[cl.label], cl.size, c)
    if missing:
        raise CoverageError(f"{data.name} in {table.name}: no count for "
                            f"{', '.join(missing)}")
    return terms


def qhat(table: ClassTable, data: SubgroupClassData, c: int) -> Fraction:
    """``sum |x^G| fpr(x)^c`` over classes of prime order: bounds the
    probability that c random cosets do not form a base."""
    return sum(qhat_terms(table, data, c).values(), Fraction(0))


def lemma_bound(a: int, b: int, c: int) -> Fraction:
    """``b (a/b)^c = a^c / b^(c-1)``: the most that classes of size at least b
    meeting H in at most a elements in total can contribute."""
    if a < 0 or b < 1 or c < 1:
        raise ValueError(f"need a >= 0, b >= 1, c >= 1 (got {a}, {b}, {c})")
    return Fraction(a ** c, b ** (c - 1))


def fuse_counts(table: ClassTable, fusion: FusionMap, ambient: ClassTable | None = None,
                labels: Iterable[str] | None = None) -> SubgroupClassData:
    """Push a subgroup's class sizes forward along its fusion map."""
    if fusion.source != table.name:
        raise ClassDataError(f"fusion from {fusion.source} applied to table {table.name}")
    fusion.validate(table, ambient)
    counts: dict[str, int] = {}
    for lab in (table.classes if labels is None else labels):
        dst = fusion[lab]
        counts[dst] = counts.get(dst, 0) + table.size(lab)
    return SubgroupClassData(table.name, fusion.target, table.order, counts)


def lift_involution_counts(counts: Mapping[str, int] | SubgroupClassData, lift: LiftSpec,
                           fusion: FusionMap, quotient: ClassTable | None = None,
                           name: str | None = None) -> SubgroupClassData:
    """Counts in the ambient group G for the full preimage M of a subgroup of
    the quotient, given the subgroup's counts in the quotient classes.

    The central involution adds 1; a split class adds its count to both
    lifted classes; an identified class adds twice its count to its single
    lifted class; an order-doubled class adds nothing.  Classes without a
    rule pass through unchanged if the quotient table says they have odd
    order.  The result is fused into G.
    """
    order = None
    if isinstance(counts, SubgroupClassData):
        name = name or counts.name
        order = None if counts.order is None else 2 * counts.order
        counts = counts.counts
    if fusion.source != lift.extension:
        raise ClassDataError(f"fusion from {fusion.source}, lift into {lift.extension}")
    ext: dict[str, int] = {lift.central: 1}
    for lab, n in counts.items():
        rule = lift.rules.get(lab)
        if rule is not None:
            if rule.behaviour == "split":
                for t in rule.labels:
                    ext[t] = ext.get(t, 0) + n
            elif rule.behaviour == "identified":
                ext[rule.labels[0]] = ext.get(rule.labels[0], 0) + 2 * n
            continue
        if quotient is not None and lab in quotient and quotient.element_order(lab) % 2:
            if quotient.element_order(lab) > 1:
                ext[lab] = ext.get(lab, 0) + n
            continue
        raise ClassDataError(f"no lift behaviour for class {lab} of {lift.quotient}")
    out: dict[str, int] = {}
    for lab, n in ext.items():
        dst = fusion[lab]
        out[dst] = out.get(dst, 0) + n
    return SubgroupClassData(name or f"preimage in {lift.extension}", fusion.target, order, out)


def lift_class_table(quotient: ClassTable, lift: LiftSpec) -> ClassTable:
    """Classes of the extension lying over the identity, the involutions and
    the odd-order classes of the quotient."""
    lift.validate(quotient)
    ext = ClassTable(lift.extension, 2 * quotient.order)
    ident = [c.label for c in quotient.classes.values() if c.element_order == 1]
    for lab in ident:
        ext.add(lab, 1, 1)
    ext.add(lift.central, 2, 1)
    for cl in quotient.classes.values():
        if cl.element_order == 2:
            rule = lift.rules[cl.label]
            if rule.behaviour == "split":
                for t in rule.labels:
                    ext.add(t, 2, cl.size)
            elif rule.behaviour == "identified":
                ext.add(rule.labels[0], 2, 2 * cl.size)
        elif cl.element_order % 2 and cl.element_order > 1:
            ext.add(cl.label, cl.element_order, cl.size)
    return ext


def involution_count(table: ClassTable) -> int:
    return table.count_of_order(2)


def perm_char_count(class_size: int, index: int, chi: int) -> int:
    """``|x^L cap M| = |x^L| chi(x) / |L:M|`` for ``chi`` the permutation
    character of L on the cosets of M; the result must be an integer."""
    if class_size < 1 or index < 1 or chi < 0:
        raise ValueError("class size and index must be positive, chi nonnegative")
    q, r = divmod(class_size * chi, index)
    if r:
        raise NonIntegralError(f"{class_size} * {chi} / {index} is not an integer")
    return q


def implied_char_value(class_size: int, index: int, count: int) -> int:
    """Inverse of :func:`perm_char_count`: the character value a count implies."""
    q, r = divmod(count * index, class_size)
    if r:
        raise NonIntegralError(
            f"count {count} implies a non-integral character value {count * index}/{class_size}")
    return q


def poly_eval(p: IntPoly, q: int) -> int:
    acc = 0
    for a in reversed(p.coeffs):
        acc = acc * q + a
    return acc


def centralizer_class_size(group_order: int, centralizer_order: int) -> int:
    """``|x^G| = |G| / |C_G(x)|``."""
    if centralizer_order < 1 or group_order % centralizer_order:
        raise NonIntegralError(f"{centralizer_order} does not divide {group_order}")
    return group_order // centralizer_order


# -- orders of groups of Lie type -----------------------------------------

def _cyc(q: int, ds: Iterable[int]) -> int:
    return prod(q ** d - 1 for d in ds)


def lie_group_order(series: str, n: int, q: int) -> int:
    """Order of a finite classical or exceptional group.

    ``series`` names, with ``n`` the dimension for classical groups (ignored
    for exceptional ones): GL, SL, L (= PSL), GU, SU, U (= PSU), Sp, S
    (= PSp), Omega+, Omega-, Omega (odd dimension), O+, O-, O (the simple
    quotients), G2, F4, E6, 2E6, E7, E8, 3D4, 2F4, 2B2, 2G2 (simple
    exceptional groups, possibly not perfect for tiny q).
    """
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    if series in ("GL", "SL", "L"):
        o = q ** (n * (n - 1) // 2) * _cyc(q, range(1, n + 1))
        if series == "GL":
            return o
        o //= q - 1
        return o if series == "SL" else o // gcd(n, q - 1)
    if series in ("GU", "SU", "U"):
        o = q ** (n * (n - 1) // 2) * prod(q ** i - (-1) ** i for i in range(1, n + 1))
        if series == "GU":
            return o
        o //= q + 1
        return o if series == "SU" else o // gcd(n, q + 1)
    if series in ("Sp", "S"):
        if n % 2:
            raise ValueError("symplectic groups need even dimension")
        m = n // 2
        o = q ** (m * m) * _cyc(q, range(2, 2 * m + 1, 2))
        return o if series == "Sp" else o // gcd(2, q - 1)
    if series in ("Omega+", "Omega-", "O+", "O-"):
        if n % 2:
            raise ValueError("plus/minus type orthogonal groups need even dimension")
        m = n // 2
        eps = 1 if series.endswith("+") else -1
        o = q ** (m * (m - 1)) * (q ** m - eps) * _cyc(q, range(2, 2 * m - 1, 2))
        o //= gcd(2, q - 1)
        if not series.startswith("Omega") and q % 2:
            o //= gcd(4, q ** m - eps) // 2
        return o
    if series in ("Omega", "O"):
        if n % 2 == 0:
            raise ValueError("Omega/O without sign needs odd dimension")
        m = (n - 1) // 2
        o = q ** (m * m) * _cyc(q, range(2, 2 * m + 1, 2))
        return o // gcd(2, q - 1)
    if series == "G2":
        return q ** 6 * _cyc(q, (6, 2))
    if series == "F4":
        return q ** 24 * _cyc(q, (12, 8, 6, 2))
    if series == "E6":
        return q ** 36 * _cyc(q, (12, 9, 8, 6, 5, 2)) // gcd(3, q - 1)
    if series == "2E6":
        return (q ** 36 * (q ** 12 - 1) * (q ** 9 + 1) * (q ** 8 - 1) * (q ** 6 - 1)
                * (q ** 5 + 1) * (q ** 2 - 1) // gcd(3, q + 1))
    if series == "E7":
        return q ** 63 * _cyc(q, (18, 14, 12, 10, 8, 6, 2)) // gcd(2, q - 1)
    if series == "E8":
        return q ** 120 * _cyc(q, (30, 24, 20, 18, 14, 12, 8, 2))
    if series == "3D4":
        return q ** 12 * (q ** 8 + q ** 4 + 1) * (q ** 6 - 1) * (q ** 2 - 1)
    if series == "2F4":
        return q ** 12 * (q ** 6 + 1) * (q ** 4 - 1) * (q ** 3 + 1) * (q - 1)
    if series == "2B2":
        return q ** 2 * (q ** 2 + 1) * (q - 1)
    if series == "2G2":
        return q ** 3 * (q ** 3 + 1) * (q - 1)
    raise ValueError(f"unsupported series {series!r}")
