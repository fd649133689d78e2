"""Parameter synthesis for parametric timed automata."""

__version__ = "0.1.0"
