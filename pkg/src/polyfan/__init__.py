"""polyfan: exact rational cones, fans, Newton polyhedra and the
recursive upward-subdivision machinery, with machine verification of
the height inequalities."""

__version__ = "0.1.0"
