"""Textual model/property/valuation parsing and stable JSON output."""

from .emit import (
    classifier_document,
    dumps,
    emit_classifier,
    emit_model,
    emit_region,
    emit_run,
    region_document,
    run_document,
    valuation_document,
)
from .lexer import ParseDiagnostic, ParseError
from .parse import ModelSource, parse_model, parse_property, parse_region, parse_valuation

__all__ = [
    "ModelSource", "ParseDiagnostic", "ParseError", "classifier_document",
    "dumps", "emit_classifier", "emit_model", "emit_region", "emit_run",
    "parse_model", "parse_property", "parse_region", "parse_valuation",
    "region_document", "run_document", "valuation_document",
]
