"""Turaev-Viro and Reshetikhin-Turaev invariants of closed 3-manifolds at SU_q(2) roots of unity."""

__version__ = "0.1.0"
