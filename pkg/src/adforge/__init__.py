"""adforge: generate, rewrite, rank and psychologically annotate short
health-ad copy, with a desk-scale offline evaluation harness."""

__version__ = "0.1.0"
