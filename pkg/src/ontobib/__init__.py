"""ontobib: ontology-driven bibliographic search portal."""

__version__ = "0.1.0"
