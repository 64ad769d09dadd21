import pytest

from claro.dsl import (
    TemplateParseError,
    load_data_file,
    load_shipped_templates,
    parse_template_file,
    parse_template_line,
    serialize_template,
)
from claro.templates import Provenance, Slot, SlotKind, Text


def test_parse_simple_line():
    t = parse_template_line("1.Is there [EC1] for [EC2]?")
    assert t.id == 1 and t.variant is None
    assert t.segments == (Text("Is there "), Slot(SlotKind.EC, 1),
                          Text(" for "), Slot(SlotKind.EC, 2), Text("?"))


def test_parse_variant_line():
    t = parse_template_line("22a.Is [EC1] [EC2] or not?")
    assert (t.id, t.variant) == (22, "a")


def test_parse_split_pc_line():
    t = parse_template_line("5.At what [EC1] [PC1] [EC2] of [EC3] [PC1]?")
    assert t.occurrences(Slot(SlotKind.PC, 1)) == 2


def test_asterisk_sets_post_evaluation():
    t = parse_template_line("93.What is [EC1]?*")
    assert t.provenance is Provenance.POST_EVALUATION


def test_zero_slot_index_rejected():
    with pytest.raises(TemplateParseError, match="index must be >= 1"):
        parse_template_line("7.Who [PC1] [EC0]?")


def test_unknown_slot_tag_rejected():
    with pytest.raises(TemplateParseError, match="malformed slot marker"):
        parse_template_line("7.Who [XY1] [EC1]?")


def test_missing_id_prefix_rejected():
    with pytest.raises(TemplateParseError, match="missing id prefix"):
        parse_template_line("Is there [EC1]?")


def test_missing_question_mark_rejected():
    with pytest.raises(TemplateParseError, match="does not end with"):
        parse_template_line("3.Is there [EC1]")


def test_error_carries_position():
    try:
        parse_template_line("7.Who [PC1] [EC0]?", line_no=9)
    except TemplateParseError as e:
        assert e.line_no == 9 and e.column is not None
    else:
        pytest.fail("expected a parse error")


def test_serialize_round_trips_examples():
    for line in ("22a.Is [EC1] [EC2] or not?", "93.What is [EC1]?*",
                 "10.Given [EC1], what are [EC2] for [EC3] of [EC4]?"):
        assert serialize_template(parse_template_line(line)) == line


def test_parse_file_duplicate_id():
    with pytest.raises(TemplateParseError, match=r"duplicate id \(22, none\)"):
        parse_template_file("22.Is [EC1] [EC2]?\n22.Is [EC1] [EC2]?\n")


def test_parse_empty_file():
    ts = parse_template_file("")
    assert len(ts) == 0


def test_shipped_file_loads_134():
    ts = load_shipped_templates()
    assert len(ts) == 134


def test_shipped_file_byte_round_trip():
    raw = load_data_file("claro_templates.txt")
    lines = [l for l in raw.splitlines() if l.strip() and not l.startswith("#")]
    ts = load_shipped_templates()
    assert len(lines) == len(ts.templates)
    for line, t in zip(lines, ts.templates):
        assert serialize_template(t) == line


def test_structural_round_trip_shipped():
    ts = load_shipped_templates()
    negation = frozenset(t.id for t in ts
                         if t.provenance is Provenance.NEGATION_EXTENSION)
    for t in ts:
        again = parse_template_line(serialize_template(t), negation_ids=negation)
        assert again == t
