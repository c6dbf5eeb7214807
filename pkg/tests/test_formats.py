import pytest
from hypothesis import given, settings, strategies as st

from basesize.base import Policy, exact_base_size
from basesize.formats import (FormatError, parse_certificate, parse_certificates,
                              parse_class_data, parse_group_file, serialize_certificate,
                              serialize_certificates, serialize_class_data, serialize_group)
from basesize.groups import GeneratedGroup
from basesize.perms import Permutation

from conftest import DATA, build


def test_cyclic_group_file():
    g = parse_group_file("degree 3\ngen 2 3 1\n")
    assert g.order == 3 and g.name is None


def test_group_file_comments_and_name():
    g = parse_group_file("# a toy\nname C2\ndegree 2  # two points\ngen 2 1\n")
    assert g.name == "C2" and g.order == 2


@pytest.mark.parametrize("text, line, msg", [
    ("degree 3\ngen 1 1 2\n", 2, "bijection"),
    ("degree 3\ngen 1 2\n", 2, "2 images"),
    ("gen 1 2\n", 1, "before degree"),
    ("degree 3\nfoo 1\n", 2, "unknown keyword"),
    ("degree x\n", 1, "integer"),
    ("name G\n", None, "missing degree"),
])
def test_group_file_errors_carry_line_numbers(text, line, msg):
    with pytest.raises(FormatError) as e:
        parse_group_file(text, source="t.grp")
    assert e.value.line == line
    assert msg in str(e.value)


def test_shipped_m11_file():
    assert parse_group_file((DATA / "groups" / "m11.grp").read_text()).order == 7920


@settings(max_examples=30)
@given(st.lists(st.permutations(range(6)).map(Permutation), min_size=1, max_size=3))
def test_group_round_trip(gens):
    g = GeneratedGroup(gens, 6, name="T")
    back = parse_group_file(serialize_group(g))
    assert back.generators == g.generators and back.name == "T"


MINIMAL = """\
group G order 6
class 1A 1 1
class 2A 2 3
class 3A 3 2
"""


def test_minimal_table():
    data = parse_class_data("group T order 1\nclass 1A 1 1\n")
    assert list(data.tables["T"].classes) == ["1A"]
    data = parse_class_data(MINIMAL)
    assert data.tables["G"].size("2A") == 3


def test_duplicate_label_rejected():
    with pytest.raises(FormatError) as e:
        parse_class_data(MINIMAL + "class 2A 2 3\n")
    assert e.value.line == 5


def test_order_violating_fusion_rejected():
    text = MINIMAL + "group H order 2\nclass 1A 1 1\nclass 2A 2 1\nfusion H -> G\nmap 1A 1A\nmap 2A 3A\n"
    with pytest.raises(FormatError) as e:
        parse_class_data(text)
    assert "order" in str(e.value)
    assert e.value.line == 10


def test_structural_errors():
    with pytest.raises(FormatError):
        parse_class_data("class 2A 2 3\n")
    with pytest.raises(FormatError):
        parse_class_data("lift Q by-center-of E central 2A\nrule 2A twisted 2B\n")
    with pytest.raises(FormatError):
        parse_class_data("lift Q by-center-of E central 2A\nrule 2B split 2C\n")
    with pytest.raises(FormatError):
        parse_class_data("charvalue M in G index 3 class 2A poly nope at 2\n")


def test_shipped_involution_tables():
    data = parse_class_data((DATA / "classes" / "baby.cls").read_text(), "baby.cls")
    ext, quo, b = data.tables["2.2E6(2):2"], data.tables["2E6(2):2"], data.tables["B"]
    assert len(ext.labels(2)) == 10  # the central involution is 2A
    assert len(quo.labels(2)) == 5
    assert len(b.labels(2)) == 4
    assert ext.size("2F") == 2639867630400
    assert quo.size("2C") == 1319933815200
    assert b.size("2D") == 355438141723665000
    assert data.origin("class", "B", "2D").printed


def test_provenance_is_recorded():
    text = "# provenance: printed, sizes\ngroup G order 6\nclass 1A 1 1\n" \
           "# provenance: derived, oracle\nclass 2A 2 3\n"
    data = parse_class_data(text, "x.cls")
    assert data.origin("class", "G", "1A").printed
    assert not data.origin("class", "G", "2A").printed
    assert data.origin("class", "G", "2A").line == 5


def test_class_data_round_trip():
    for path in sorted((DATA / "classes").glob("*.cls")):
        data = parse_class_data(path.read_text(), path.name)
        again = parse_class_data(serialize_class_data(data), path.name)
        assert again.tables == data.tables
        assert again.fusions == data.fusions
        assert again.lifts == data.lifts
        assert again.subgroups == data.subgroups
        assert again.polys == data.polys
        assert again.charvalues == data.charvalues
        assert ({k: o.provenance for k, o in again.origins.items()}
                == {k: o.provenance for k, o in data.origins.items()})


def test_certificate_round_trip():
    g, h = build("M11"), build("M11/3^2:SD16")
    res = exact_base_size(g, h, Policy(trials=2000))
    for cert in res.certificates:
        assert parse_certificate(serialize_certificate(cert)) == cert
    text = serialize_certificates(res.certificates)
    assert parse_certificates(text) == res.certificates


def test_certificate_format_lines():
    g, h = build("M11"), build("M11/3^2:SD16")
    res = exact_base_size(g, h, Policy(trials=2000))
    text = serialize_certificate(next(c for c in res.certificates if c.kind == "witness"))
    lines = text.splitlines()
    assert lines[0] == "CERT witness"
    assert lines[1] == "GROUP M11 ORDER 7920"
    assert lines[2] == "SUBGROUP 3^2:SD16 ORDER 144"
    assert lines[-1] == "ESTABLISHES b <= 3"
    assert sum(line.startswith("CONJUGATOR ") for line in lines) == 2


@pytest.mark.parametrize("text, msg", [
    ("CERT magic\n", "unknown certificate kind"),
    ("CERT witness\nGROUP G ORDER x\n", "integer"),
    ("CERT witness\nGROUP G ORDER 2\nSUBGROUP H ORDER 1\nCONJUGATOR 1 1\n", "bijection"),
    ("CERT witness\nGROUP G ORDER 2\nSUBGROUP H ORDER 1\n", "ESTABLISHES"),
    ("CERT witness\nGROUP G ORDER 2\nSUBGROUP H ORDER 1\nESTABLISHES b ~ 2\n", "ESTABLISHES"),
])
def test_certificate_errors(text, msg):
    with pytest.raises(FormatError) as e:
        parse_certificate(text)
    assert msg in str(e.value)


def test_multi_certificate_error_lines_are_global():
    good = "CERT lower-bound\nGROUP G ORDER 6\nSUBGROUP H ORDER 2\nESTABLISHES b >= 2\n"
    with pytest.raises(FormatError) as e:
        parse_certificates(good + "\nCERT witness\nGROUP G ORDER q\n")
    assert e.value.line == 7
