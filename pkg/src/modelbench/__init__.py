"""modelbench: profile-driven benchmarking of model datasets.

Scans a dataset directory, parses ArchiMate / Ecore models into a shared
typed-graph intermediate representation, computes a four-dimension catalog
of quality measures, and writes persisted JSON evidence plus a report
projection.  Operable as a library, via the ``modelbench`` CLI, and via an
HTTP API.
"""

__version__ = "0.1.0"
