"""Territory-oriented indexing toolkit.

Builds a typed term graph from catalog notices and a thesaurus, types
spatial terms against a gazetteer, mines free text for placename links,
and exports the result as a small ontology (JSON, Turtle, DOT).
"""

__version__ = "0.1.0"
