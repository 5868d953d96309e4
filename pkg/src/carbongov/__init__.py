"""carbongov: evidence-grounded multi-agent planning support for urban carbon governance."""

__version__ = "0.1.0"
