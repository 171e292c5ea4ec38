"""Dirichlet series with Euler products, Artin L-functions of small Galois
extensions of Q, and numerical probes of Selberg's conjectures A and B."""

__version__ = "0.1.0"
