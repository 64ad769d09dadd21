import pytest

from claro.templates import (
    Provenance,
    Slot,
    SlotKind,
    Template,
    TemplateSet,
    Text,
    structural_stats,
    validate_set,
    validate_template,
)
from claro.dsl import load_shipped_templates, parse_template_line


def template_22():
    return parse_template_line("22.Is [EC1] [EC2]?")


def test_template_22_validates():
    assert validate_template(template_22()) == []


def test_missing_question_mark_is_reported():
    t = Template(1, None, (Text("Hi "), Slot(SlotKind.EC, 1)))
    messages = [v.message for v in validate_template(t)]
    assert "missing terminal question mark" in messages


def test_too_many_ec_variables():
    segs = [Text("Q ")]
    for i in range(1, 6):
        segs += [Slot(SlotKind.EC, i), Text(" ")]
    segs[-1] = Text("?")
    t = Template(1, None, tuple(segs))
    messages = [v.message for v in validate_template(t)]
    assert "more than 4 EC variables" in messages


def test_no_ec_slot_is_reported():
    t = Template(1, None, (Slot(SlotKind.PC, 1), Text(" x?")))
    messages = [v.message for v in validate_template(t)]
    assert "template has no EC slot" in messages


def test_pc_split_bound():
    segs = (Slot(SlotKind.PC, 1), Text(" "), Slot(SlotKind.EC, 1), Text(" "),
            Slot(SlotKind.PC, 1), Text(" "), Slot(SlotKind.PC, 1), Text(" "),
            Slot(SlotKind.PC, 1), Text("?"))
    messages = [v.message for v in validate_template(Template(1, None, segs))]
    assert any("split into more than 3 parts" in m for m in messages)


def test_non_dense_indices_reported():
    t = Template(1, None, (Text("Is "), Slot(SlotKind.EC, 2), Text("?")))
    messages = [v.message for v in validate_template(t)]
    assert any("not dense" in m for m in messages)


def test_text_segment_rejects_slot_markers():
    with pytest.raises(ValueError):
        Text("has [EC1] inside")


def test_slot_index_must_be_positive():
    with pytest.raises(ValueError):
        Slot(SlotKind.EC, 0)


def test_validate_set_of_shipped_templates():
    ts = load_shipped_templates()
    assert validate_set(ts) == []
    assert len(ts.base_templates()) == 93
    assert len(ts.variant_templates()) == 41


def test_orphan_variant_detected():
    ts = TemplateSet("x", "1", [parse_template_line("22a.Is [EC1] [EC2] or not?")])
    assert any("orphan variant 22a" in str(v) for v in validate_set(ts))


def test_duplicate_id_detected():
    t = template_22()
    ts = TemplateSet("x", "1", [t, template_22()])
    assert any("duplicate id (22, none)" in str(v) for v in validate_set(ts))


def test_empty_set_is_valid():
    ts = TemplateSet("empty", "1", [])
    assert validate_set(ts) == []
    st = structural_stats(ts)
    assert st.base_count == 0 and st.variant_count == 0


def test_structural_stats_shipped():
    st = structural_stats(load_shipped_templates())
    assert st.max_ec_vars == 4
    assert st.max_pc_vars == 2
    assert st.max_total_vars == 5
    assert st.max_slot_occurrences == 6
    assert st.max_pc_parts == 3
    assert st.templates_with_ec == 134


def test_structural_stats_singleton():
    ts = TemplateSet("one", "1", [template_22()])
    st = structural_stats(ts)
    assert st.max_ec_vars == 2
    assert st.max_pc_vars == 0


def test_shipped_provenance_assignment():
    ts = load_shipped_templates()
    special = {t.ref: t.provenance for t in ts
               if t.provenance is not Provenance.DATASET_DERIVED}
    assert special == {
        "60a": Provenance.POST_EVALUATION,
        "93": Provenance.POST_EVALUATION,
        "90": Provenance.NEGATION_EXTENSION,
        "91": Provenance.NEGATION_EXTENSION,
        "92": Provenance.NEGATION_EXTENSION,
    }


def test_repeated_ec_index_is_allowed():
    # two shipped templates repeat an entity slot; the bound rules still hold
    ts = load_shipped_templates()
    t52, t71 = ts.get(52), ts.get(71)
    assert validate_template(t52) == []
    assert t71.occurrences(Slot(SlotKind.EC, 1)) == 2
