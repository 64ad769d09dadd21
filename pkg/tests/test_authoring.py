import pytest
from hypothesis import given, settings, strategies as st

from claro.authoring import (
    BindingError,
    LintKind,
    SuggestMode,
    instantiate,
    lint,
    render_user_friendly,
    suggest,
)
from claro.dsl import load_shipped_templates


@pytest.fixture(scope="module")
def templates():
    return load_shipped_templates()


def refs(suggestions):
    return [s.ref for s in suggestions]


def test_render_template_1(templates):
    assert render_user_friendly(templates.get(1)) == \
        "Is there [noun phrase] for [noun phrase]?"


def test_render_template_8(templates):
    assert render_user_friendly(templates.get(8)) == \
        "Does [noun phrase] have [noun phrase]?"


def test_render_template_29(templates):
    assert render_user_friendly(templates.get(29)) == \
        "[verb phrase] [noun phrase] [verb phrase] [noun phrase]?"


def test_render_has_no_slot_tokens(templates):
    for t in templates:
        display = render_user_friendly(t)
        assert "EC" not in display and "PC" not in display


def test_suggest_does_starts_with(templates):
    assert refs(suggest("Does", SuggestMode.STARTS_WITH, templates)) == ["8", "9"]


def test_suggest_does_contains(templates):
    got = refs(suggest("Does", SuggestMode.CONTAINS, templates))
    assert set(got) >= {"8", "9", "48"}
    assert got[:2] == ["8", "9"]  # prefix hits come first


def test_suggest_what_type(templates):
    assert refs(suggest("What type", SuggestMode.STARTS_WITH, templates)) == \
        ["70", "70a", "71"]


def test_suggest_empty_input_returns_all(templates):
    assert len(suggest("", SuggestMode.STARTS_WITH, templates)) == 134
    assert len(suggest("", SuggestMode.CONTAINS, templates)) == 134


def test_suggest_case_insensitive(templates):
    assert refs(suggest("does", SuggestMode.STARTS_WITH, templates)) == ["8", "9"]


def test_starts_with_subset_of_contains(templates):
    for prefix in ("Is", "What", "Which are", "o", "", "zzz"):
        sw = set(refs(suggest(prefix, SuggestMode.STARTS_WITH, templates)))
        co = set(refs(suggest(prefix, SuggestMode.CONTAINS, templates)))
        assert sw <= co


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz ?[]", min_size=0, max_size=12))
@settings(max_examples=200)
def test_suggest_monotone(s):
    templates = load_shipped_templates()
    shorter = set(refs(suggest(s, SuggestMode.STARTS_WITH, templates)))
    longer = set(refs(suggest(s + "x", SuggestMode.STARTS_WITH, templates)))
    assert longer <= shorter


def test_instantiate_81(templates):
    text = instantiate(templates.get(81), {
        "EC1": "software", "PC1": "can perform", "EC2": "spelling correction"})
    assert text == "Which software can perform spelling correction?"


def test_instantiate_22(templates):
    assert instantiate(templates.get(22), {"EC1": "x", "EC2": "y"}) == "Is x y?"


def test_instantiate_missing_binding(templates):
    with pytest.raises(BindingError, match="unbound slot PC1"):
        instantiate(templates.get(81), {"EC1": "software", "EC2": "x"})


def test_instantiate_extra_binding(templates):
    with pytest.raises(BindingError, match="unknown slot"):
        instantiate(templates.get(22), {"EC1": "x", "EC2": "y", "EC3": "z"})


def test_instantiate_split_pc_parts(templates):
    text = instantiate(templates.get(29), {
        "PC1": ["Does", "run"], "EC1": "the tool", "EC2": "batch jobs"})
    assert text == "Does the tool run batch jobs?"


def test_instantiate_split_pc_requires_parts(templates):
    with pytest.raises(BindingError, match="one part per occurrence"):
        instantiate(templates.get(29), {"PC1": "does", "EC1": "x", "EC2": "y"})


def test_instantiate_empty_phrase(templates):
    with pytest.raises(BindingError, match="empty phrase"):
        instantiate(templates.get(22), {"EC1": " ", "EC2": "y"})


# --- linting -------------------------------------------------------------------

def kinds(text):
    return [f.kind for f in lint(text)]


def test_lint_imperative_with_rewrite():
    findings = lint("Find all vegetarian pizzas.")
    assert findings[0].kind is LintKind.IMPERATIVE
    assert findings[0].rewrites == ("Which pizzas are vegetarian pizzas?",)


def test_lint_explainer():
    assert LintKind.EXPLAINER_QUESTION in kinds(
        "Why universities are organized into departments?")


def test_lint_procedural():
    assert LintKind.PROCEDURAL_QUESTION in kinds(
        "How to represent tri-axial acceleration data from accelerometers of "
        "an ECG device?")


def test_lint_multi_question_four_splits():
    findings = lint(
        "What is an ECG lead, what are the types of ECG leads, what type of "
        "property an ECG lead measures and what type of measurement an ECG "
        "lead can measure?")
    multi = next(f for f in findings if f.kind is LintKind.MULTI_QUESTION)
    assert len(multi.rewrites) == 4
    assert multi.rewrites[0] == "What is an ECG lead?"
    assert multi.rewrites[1] == "What are the types of ECG leads?"


def test_lint_clean_question():
    assert lint("Do lions eat grass?") == []


def test_lint_non_question():
    assert LintKind.NON_QUESTION in kinds("Pizzas are tasty")


def test_lint_which_what_advice():
    assert LintKind.WHICH_WHAT_ADVICE in kinds(
        "Which are the tasks of the semi-directed step?")


def test_lint_instance_suspect():
    assert LintKind.INSTANCE_LEVEL_SUSPECT in kinds("Is Margherita a pizza?")


def test_lint_span_within_input():
    text = "Is Margherita a pizza?"
    for f in lint(text):
        assert 0 <= f.start <= f.end <= len(text)


def test_templates_lint_clean(templates):
    # every user-friendly form, filled with bland placeholders, lints clean
    from claro.authoring import instantiate as fill
    for t in templates:
        bindings = {}
        for name in t.slot_names():
            occurrences = sum(1 for s in t.slots() if s.name == name)
            if name.startswith("EC"):
                bindings[name] = "the item"
            elif occurrences == 1:
                bindings[name] = "can use"
            else:
                bindings[name] = ["does", "use", "well"][:occurrences]
        text = fill(t, bindings)
        bad = {LintKind.IMPERATIVE, LintKind.NON_QUESTION}
        assert not bad & set(kinds(text)), (t.ref, text)
