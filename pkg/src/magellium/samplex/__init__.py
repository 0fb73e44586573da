"""Sample-based abductive explanations for black-box classifiers, with an axiom harness."""

__version__ = "0.1.0"
