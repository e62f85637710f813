"""2-descent bounds for Bloch-Kato Selmer groups of hyperelliptic Jacobians
with good ordinary reduction at 2, and depth-2 Chabauty-Kim finiteness
verdicts."""

__version__ = "1.0.0"
