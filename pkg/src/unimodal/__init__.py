"""Exact verification engine for the numerical classification of Gorenstein
stable surfaces with K^2 = 1, chi = 3 and one exceptional unimodal double point.

Everything is computed in exact rational arithmetic: intersection lattices
through blow-ups, double covers and contractions; fundamental cycles and the
exceptional-unimodal catalog; plane-curve germs and linear systems; and the
declarative construction pipelines with their machine-checked reports.
"""

__version__ = "0.1.0"
