import pytest
from hypothesis import given, settings, strategies as st

from claro.dsl import load_shipped_templates
from claro.storage import (
    CompetencyQuestion,
    CQDocument,
    Instantiation,
    StorageError,
    load_document,
    load_document_checked,
    save_document,
    validate_document,
)


@pytest.fixture(scope="module")
def templates():
    return load_shipped_templates()


def sample_document():
    q1 = CompetencyQuestion(
        text="Which software can perform spelling correction?",
        instantiations=(Instantiation(81, None, (
            ("EC1", ("software",)),
            ("PC1", ("can perform",)),
            ("EC2", ("spelling correction",)))),),
        ontologies=("http://example.org/swo",),
        created="2024-01-01T00:00:00Z",
        modified="2024-01-02T12:30:00Z",
    )
    q2 = CompetencyQuestion(text="Do Androids Dream of Electric Sheep?")
    q3 = CompetencyQuestion(
        text="Does the tool run batch jobs?",
        instantiations=(Instantiation(29, None, (
            ("PC1", ("Does", "run")),
            ("EC1", ("the tool",)),
            ("EC2", ("batch jobs",)))),),
    )
    return CQDocument(title="demo", questions=[q1, q2, q3])


def test_save_contains_template_ref_and_bindings():
    xml_text = save_document(sample_document())
    assert 'templateId="81"' in xml_text
    assert xml_text.count("<binding") == 3 + 4  # three for 81, four for split 29
    assert 'ref="http://example.org/swo"' in xml_text


def test_empty_document_is_valid_xml():
    xml_text = save_document(CQDocument(title="empty"))
    doc, warnings = load_document(xml_text)
    assert doc.title == "empty"
    assert doc.questions == []
    assert warnings == []


def test_free_form_question_has_no_instantiation_element():
    xml_text = save_document(CQDocument(
        title="x", questions=[CompetencyQuestion(text="Why not?")]))
    assert "<instantiation" not in xml_text


def test_round_trip_identity():
    doc = sample_document()
    loaded, warnings = load_document(save_document(doc))
    assert loaded == doc
    assert warnings == []


def test_missing_text_attribute_errors():
    bad = '<cqDocument title="t"><cq/></cqDocument>'
    with pytest.raises(StorageError, match=r"missing text attribute at /cqDocument/cq\[1\]"):
        load_document(bad)


def test_malformed_xml_errors():
    with pytest.raises(StorageError, match="malformed XML"):
        load_document("<cqDocument")


def test_unknown_template_ref_is_warning(templates):
    doc = CQDocument(title="t", questions=[CompetencyQuestion(
        text="x?", instantiations=(Instantiation(999, None, (("EC1", ("x",)),)),))])
    loaded, warnings = load_document_checked(save_document(doc), templates)
    assert loaded == doc
    assert any("999" in w for w in warnings)


def test_validate_document_checks_instantiation(templates):
    doc = CQDocument(title="t", questions=[CompetencyQuestion(
        text="Is left right?",
        instantiations=(Instantiation(22, None, (
            ("EC1", ("left",)), ("EC2", ("wrong",)))),))])
    problems = validate_document(doc, templates)
    assert problems and "bindings produce" in problems[0]


def test_validate_document_accepts_consistent(templates):
    doc = CQDocument(title="t", questions=[CompetencyQuestion(
        text="Is left right?",
        instantiations=(Instantiation(22, None, (
            ("EC1", ("left",)), ("EC2", ("right",)))),))])
    assert validate_document(doc, templates) == []


def test_bad_timestamp_rejected():
    with pytest.raises(ValueError, match="ISO-8601"):
        CompetencyQuestion(text="x?", created="yesterday")


_safe_text = st.text(
    alphabet=st.characters(min_codepoint=0x20, max_codepoint=0x7E),
    min_size=1, max_size=40).filter(lambda s: s.strip())


@st.composite
def documents(draw):
    title = draw(_safe_text)
    questions = []
    for _ in range(draw(st.integers(0, 4))):
        n_inst = draw(st.integers(0, 2))
        instantiations = []
        for _ in range(n_inst):
            slots = []
            for k in range(draw(st.integers(1, 3))):
                parts = tuple(draw(st.lists(_safe_text, min_size=1, max_size=2)))
                slots.append((f"EC{k + 1}", parts))
            instantiations.append(
                Instantiation(draw(st.integers(1, 93)),
                              draw(st.sampled_from([None, "a", "b"])),
                              tuple(slots)))
        ts = draw(st.sampled_from(
            [None, "2024-05-05T10:00:00Z", "2023-01-31T23:59:59Z"]))
        questions.append(CompetencyQuestion(
            text=draw(_safe_text),
            instantiations=tuple(instantiations),
            ontologies=tuple(draw(st.lists(_safe_text, max_size=2))),
            created=ts, modified=ts))
    return CQDocument(title=title, questions=questions)


@given(documents())
@settings(max_examples=200)
def test_round_trip_random_documents(doc):
    loaded, _ = load_document(save_document(doc))
    assert loaded == doc
