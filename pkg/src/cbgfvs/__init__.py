"""Chordal bipartite graphs: recognition, separators, embeddings and exact FVS."""

__version__ = "0.1.0"
