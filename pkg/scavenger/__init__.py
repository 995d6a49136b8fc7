"""Exact search and verification of 4-chromatic subgraphs of G(Q^3, sqrt t)."""
