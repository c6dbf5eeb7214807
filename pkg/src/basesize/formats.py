"""Line-oriented text formats for groups, class data and certificates.

All three formats allow ``#`` comments and blank lines.  Errors carry the
line number they refer to.
"""

from __future__ import annotations

from .base import KINDS, BaseSizeCertificate
from .classdata import (BEHAVIOURS, ClassDataError, ClassTable, FusionMap, IntPoly,
                        LiftRule, LiftSpec, SubgroupClassData)
from .classdb import CharValue, ClassData, Origin
from .groups import GeneratedGroup
from .perms import Permutation


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.message, self.line, self.source = message, line, source
        where = ""
        if source:
            where = f"{source}:"
        if line is not None:
            where += f"line {line}: " if not source else f"{line}: "
        elif source:
            where += " "
        super().__init__(where + message)


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        yield n, raw, body


def _int(tok: str, n: int, what: str, source=None) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", n, source) from None


def _images(tokens: list[str], n: int, source=None) -> list[int]:
    imgs = [_int(t, n, "image", source) for t in tokens]
    if sorted(imgs) != list(range(1, len(imgs) + 1)):
        raise FormatError(f"not a bijection on 1..{len(imgs)}: {' '.join(tokens)}", n, source)
    return imgs


# -- group files ----------------------------------------------------------

def parse_group_file(text: str, source: str | None = None) -> GeneratedGroup:
    """``name``, ``degree`` and ``gen`` lines (1-indexed image lists)."""
    name, degree, gens = None, None, []
    for n, raw, body in _lines(text):
        if not body:
            continue
        key, _, rest = body.partition(" ")
        rest = rest.strip()
        if key == "name":
            if not rest:
                raise FormatError("empty name", n, source)
            name = rest
        elif key == "degree":
            if degree is not None:
                raise FormatError("degree given twice", n, source)
            degree = _int(rest, n, "degree", source)
            if degree < 1:
                raise FormatError("degree must be positive", n, source)
        elif key == "gen":
            if degree is None:
                raise FormatError("gen line before degree", n, source)
            toks = rest.split()
            if len(toks) != degree:
                raise FormatError(f"gen has {len(toks)} images, degree is {degree}", n, source)
            gens.append(Permutation.from_images(_images(toks, n, source)))
        else:
            raise FormatError(f"unknown keyword {key!r}", n, source)
    if degree is None:
        raise FormatError("missing degree line", None, source)
    if not gens:
        gens = [Permutation.from_images(list(range(1, degree + 1)))]
    return GeneratedGroup(gens, degree, name=name)


def serialize_group(g: GeneratedGroup) -> str:
    out = []
    if g.name:
        out.append(f"name {g.name}")
    out.append(f"degree {g.degree}")
    for x in g.generators:
        out.append("gen " + " ".join(map(str, x.images)))
    return "\n".join(out) + "\n"


# -- class data files -----------------------------------------------------

def parse_class_data(text: str, source: str = "<text>") -> ClassData:
    """Parse the sectioned class data format.

    Section headers::

        group <name> order <int>             followed by  class <label> <order> <size>
        fusion <src> -> <dst>                followed by  map <src-label> <dst-label>
        lift <quotient> by-center-of <ext> central <label>
                                             followed by  rule <label> split <l1> <l2>
                                                          rule <label> identified <l1>
                                                          rule <label> order-doubled
        subgroupdata <name> in <group> order <int>
                                             followed by  count <label> <int>

    Stand-alone lines::

        poly <name> <c0> <c1> ...            (ascending coefficients in q)
        charvalue <subgroup> in <group> index <n> class <label> value <int>
        charvalue <subgroup> in <group> index <n> class <label> poly <name> at <q>

    A comment ``# provenance: <note>`` applies to the lines after it.
    """
    data = ClassData()
    section = None
    current = None
    provenance = ""

    def origin(n):
        return Origin(source, n, provenance)

    def fail(msg, n):
        raise FormatError(msg, n, source)

    for n, raw, body in _lines(text):
        comment = raw.split("#", 1)[1].strip() if "#" in raw else ""
        if comment.startswith("provenance:"):
            provenance = comment[len("provenance:"):].strip()
        if not body:
            continue
        tok = body.split()
        key = tok[0]
        try:
            if key == "group":
                if len(tok) != 4 or tok[2] != "order":
                    fail("expected: group <name> order <int>", n)
                name, order = tok[1], _int(tok[3], n, "order", source)
                t = data.tables.get(name)
                if t is None:
                    t = data.tables[name] = ClassTable(name, order)
                    data.origins[("group", name)] = origin(n)
                elif t.order != order:
                    fail(f"group {name} redeclared with order {order}", n)
                section, current = "group", t
            elif key == "class":
                if section != "group":
                    fail("class line outside a group section", n)
                if len(tok) != 4:
                    fail("expected: class <label> <element-order> <size>", n)
                lab = tok[1]
                if lab in current.classes:
                    fail(f"duplicate class label {lab} in {current.name}", n)
                current.add(lab, _int(tok[2], n, "element order", source),
                            _int(tok[3], n, "class size", source))
                data.origins[("class", current.name, lab)] = origin(n)
            elif key == "fusion":
                if len(tok) != 4 or tok[2] != "->":
                    fail("expected: fusion <src> -> <dst>", n)
                current = data.fusions.setdefault((tok[1], tok[3]), FusionMap(tok[1], tok[3]))
                data.origins.setdefault(("fusion", tok[1], tok[3]), origin(n))
                section = "fusion"
            elif key == "map":
                if section != "fusion":
                    fail("map line outside a fusion section", n)
                if len(tok) != 3:
                    fail("expected: map <src-label> <dst-label>", n)
                current.add(tok[1], tok[2])
                data.origins[("map", current.source, current.target, tok[1])] = origin(n)
            elif key == "lift":
                if len(tok) != 6 or tok[2] != "by-center-of" or tok[4] != "central":
                    fail("expected: lift <quotient> by-center-of <extension> central <label>", n)
                lk = (tok[1], tok[3])
                if lk in data.lifts:
                    fail(f"lift {tok[1]} -> {tok[3]} declared twice", n)
                current = data.lifts[lk] = LiftSpec(tok[1], tok[3], tok[5])
                data.origins[("lift",) + lk] = origin(n)
                section = "lift"
            elif key == "rule":
                if section != "lift":
                    fail("rule line outside a lift section", n)
                if len(tok) < 3 or tok[2] not in BEHAVIOURS:
                    fail(f"expected: rule <label> {' | '.join(BEHAVIOURS)} ...", n)
                current.add(tok[1], LiftRule(tok[2], tuple(tok[3:])))
                data.origins[("rule", current.quotient, current.extension, tok[1])] = origin(n)
            elif key == "subgroupdata":
                if len(tok) != 6 or tok[2] != "in" or tok[4] != "order":
                    fail("expected: subgroupdata <name> in <group> order <int>", n)
                sk = (tok[1], tok[3])
                order = _int(tok[5], n, "order", source)
                s = data.subgroups.get(sk)
                if s is None:
                    s = data.subgroups[sk] = SubgroupClassData(tok[1], tok[3], order)
                    data.origins[("subgroupdata",) + sk] = origin(n)
                elif s.order != order:
                    fail(f"subgroupdata {tok[1]} in {tok[3]} redeclared with order {order}", n)
                section, current = "subgroupdata", s
            elif key == "count":
                if section != "subgroupdata":
                    fail("count line outside a subgroupdata section", n)
                if len(tok) != 3:
                    fail("expected: count <label> <int>", n)
                if tok[1] in current.counts:
                    fail(f"duplicate count for {tok[1]}", n)
                current.counts[tok[1]] = _int(tok[2], n, "count", source)
                data.origins[("count", current.name, current.group, tok[1])] = origin(n)
            elif key == "poly":
                if len(tok) < 3:
                    fail("expected: poly <name> <c0> <c1> ...", n)
                if tok[1] in data.polys:
                    fail(f"polynomial {tok[1]} defined twice", n)
                data.polys[tok[1]] = IntPoly(tuple(_int(c, n, "coefficient", source)
                                                   for c in tok[2:]))
                data.origins[("poly", tok[1])] = origin(n)
                section = None
            elif key == "charvalue":
                data.charvalues.append(_charvalue(tok, n, source))
                cv = data.charvalues[-1]
                data.origins[("charvalue", cv.subgroup, cv.group, cv.label)] = origin(n)
                section = None
            else:
                fail(f"unknown keyword {key!r}", n)
        except ClassDataError as e:
            raise FormatError(str(e), n, source) from None

    for cv in data.charvalues:
        if cv.poly is not None and cv.poly not in data.polys:
            o = data.origin("charvalue", cv.subgroup, cv.group, cv.label)
            raise FormatError(f"unknown polynomial {cv.poly}", o.line, source)
    _check_sections(data, source)
    return data


def _charvalue(tok, n, source) -> CharValue:
    shape = ("charvalue <subgroup> in <group> index <n> class <label> "
             "value <int> | poly <name> at <q>")
    if len(tok) < 10 or tok[2] != "in" or tok[4] != "index" or tok[6] != "class":
        raise FormatError("expected: " + shape, n, source)
    sub, group, label = tok[1], tok[3], tok[7]
    index = _int(tok[5], n, "index", source)
    if tok[8] == "value" and len(tok) == 10:
        return CharValue(sub, group, label, index, value=_int(tok[9], n, "value", source))
    if tok[8] == "poly" and len(tok) == 12 and tok[10] == "at":
        return CharValue(sub, group, label, index, poly=tok[9],
                         q=_int(tok[11], n, "q", source))
    raise FormatError("expected: " + shape, n, source)


def _check_sections(data: ClassData, source: str) -> None:
    """Invariants that need a whole file: fusions respect element orders.

    A class named by a map line may live in another file, so existence is
    left to :meth:`ClassData.validate` after merging.
    """
    for (src, dst), f in data.fusions.items():
        s, t = data.tables.get(src), data.tables.get(dst)
        if s is None or t is None:
            continue
        for a, b in f.mapping.items():
            line = data.origin("map", src, dst, a).line
            if a not in s or b not in t:
                continue
            if s.element_order(a) != t.element_order(b):
                raise FormatError(
                    f"fusion maps {a} (order {s.element_order(a)}) to {b} "
                    f"(order {t.element_order(b)})", line, source)
    for t in data.tables.values():
        for c in t.classes.values():
            line = data.origin("class", t.name, c.label).line
            try:
                ClassTable(t.name, t.order, {c.label: c}).validate()
            except ClassDataError as e:
                raise FormatError(str(e), line, source) from None


def serialize_class_data(data: ClassData) -> str:
    out: list[str] = []
    state = {"prov": ""}

    def emit(line: str, *key):
        prov = data.origin(*key).provenance if key else state["prov"]
        if prov != state["prov"]:
            out.append(f"# provenance: {prov}")
            state["prov"] = prov
        out.append(line)

    for name, t in data.tables.items():
        emit(f"group {name} order {t.order}", "group", name)
        for c in t.classes.values():
            emit(f"class {c.label} {c.element_order} {c.size}", "class", name, c.label)
        out.append("")
    for (src, dst), f in data.fusions.items():
        emit(f"fusion {src} -> {dst}", "fusion", src, dst)
        for a, b in f.mapping.items():
            emit(f"map {a} {b}", "map", src, dst, a)
        out.append("")
    for (q, e), lf in data.lifts.items():
        emit(f"lift {q} by-center-of {e} central {lf.central}", "lift", q, e)
        for lab, r in lf.rules.items():
            emit(" ".join(["rule", lab, r.behaviour, *r.labels]), "rule", q, e, lab)
        out.append("")
    for (name, group), s in data.subgroups.items():
        if s.order is None:
            raise ClassDataError(f"{name} in {group}: cannot write counts without an order")
        emit(f"subgroupdata {name} in {group} order {s.order}", "subgroupdata", name, group)
        for lab, n in s.counts.items():
            emit(f"count {lab} {n}", "count", name, group, lab)
        out.append("")
    for name, p in data.polys.items():
        emit(" ".join(["poly", name, *map(str, p.coeffs)]), "poly", name)
    for cv in data.charvalues:
        head = f"charvalue {cv.subgroup} in {cv.group} index {cv.index} class {cv.label}"
        tail = f"value {cv.value}" if cv.poly is None else f"poly {cv.poly} at {cv.q}"
        emit(f"{head} {tail}", "charvalue", cv.subgroup, cv.group, cv.label)
    return "\n".join(out).rstrip("\n") + "\n"


# -- certificate files ----------------------------------------------------

def serialize_certificate(cert: BaseSizeCertificate) -> str:
    out = [f"CERT {cert.kind}",
           f"GROUP {cert.group} ORDER {cert.group_order}",
           f"SUBGROUP {cert.subgroup} ORDER {cert.subgroup_order}"]
    for x in cert.conjugators:
        out.append("CONJUGATOR " + " ".join(map(str, x.images)))
    if cert.seed is not None:
        out.append(f"SEED {cert.seed} STREAM {cert.stream or 0}")
    out.append(f"ESTABLISHES b {cert.relation} {cert.value}")
    return "\n".join(out) + "\n"


def parse_certificate(text: str, source: str | None = None) -> BaseSizeCertificate:
    fields: dict = {"conjugators": []}
    for n, raw, body in _lines(text):
        if not body:
            continue
        tok = body.split()
        key = tok[0]
        if key == "CERT":
            if len(tok) != 2 or tok[1] not in KINDS:
                raise FormatError(f"unknown certificate kind {' '.join(tok[1:])!r}", n, source)
            fields["kind"] = tok[1]
        elif key in ("GROUP", "SUBGROUP"):
            if len(tok) < 4 or tok[-2] != "ORDER":
                raise FormatError(f"expected: {key} <name> ORDER <int>", n, source)
            prefix = "group" if key == "GROUP" else "subgroup"
            fields[prefix] = " ".join(tok[1:-2])
            fields[prefix + "_order"] = _int(tok[-1], n, "order", source)
        elif key == "CONJUGATOR":
            fields["conjugators"].append(Permutation.from_images(_images(tok[1:], n, source)))
        elif key == "SEED":
            if len(tok) != 4 or tok[2] != "STREAM":
                raise FormatError("expected: SEED <int> STREAM <int>", n, source)
            fields["seed"] = _int(tok[1], n, "seed", source)
            fields["stream"] = _int(tok[3], n, "stream", source)
        elif key == "ESTABLISHES":
            if len(tok) != 4 or tok[1] != "b" or tok[2] not in ("<=", ">=", "="):
                raise FormatError("expected: ESTABLISHES b <=|>=|= <int>", n, source)
            fields["relation"] = tok[2]
            fields["value"] = _int(tok[3], n, "value", source)
        else:
            raise FormatError(f"unknown keyword {key!r}", n, source)
    for need in ("kind", "group", "subgroup", "relation"):
        if need not in fields:
            raise FormatError(f"missing {need.upper() if need != 'relation' else 'ESTABLISHES'}"
                              " line", None, source)
    degrees = {len(x) for x in fields["conjugators"]}
    if len(degrees) > 1:
        raise FormatError("conjugators of different degrees", None, source)
    return BaseSizeCertificate(
        fields["kind"], fields["relation"], fields["value"], fields["group"],
        fields["group_order"], fields["subgroup"], fields["subgroup_order"],
        tuple(fields["conjugators"]), fields.get("seed"), fields.get("stream"))


def serialize_certificates(certs) -> str:
    """Several certificates, separated by blank lines."""
    return "\n".join(serialize_certificate(c) for c in certs)


def parse_certificates(text: str, source: str | None = None) -> list[BaseSizeCertificate]:
    """Split at each ``CERT`` line and parse the pieces."""
    chunks: list[list[str]] = []
    offsets: list[int] = []
    for n, raw, body in _lines(text):
        if body.startswith("CERT"):
            chunks.append([])
            offsets.append(n - 1)
        if not chunks:
            if body:
                raise FormatError("expected a CERT line first", n, source)
            continue
        chunks[-1].append(raw)
    if not chunks:
        raise FormatError("no certificate found", None, source)
    out = []
    for start, lines in zip(offsets, chunks):
        try:
            out.append(parse_certificate("\n".join(lines), source))
        except FormatError as e:
            line = None if e.line is None else e.line + start
            raise FormatError(e.message, line, source) from None
    return out
