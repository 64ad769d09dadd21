"""CLaRO: a template-based controlled natural language for competency questions.

The package bundles the template set, a rule-based CQ chunker, pattern
matching and normalization, authoring assistance (autocomplete, linting),
XML persistence of authored questions, and a coverage evaluator with
bundled evaluation fixtures.
"""

__version__ = "1.0.0"

from .templates import (  # noqa: F401
    SlotKind,
    Provenance,
    Text,
    Slot,
    Template,
    TemplateSet,
    validate_template,
    validate_set,
    structural_stats,
)
from .dsl import (  # noqa: F401
    parse_template_line,
    parse_template_file,
    serialize_template,
    load_shipped_templates,
    TemplateParseError,
)
