"""Constructive homological algebra over K[x0..xn]: q-presentations,
Ω-resolutions and Buchsbaum tests for projective subschemes."""

__version__ = "0.1.0"
