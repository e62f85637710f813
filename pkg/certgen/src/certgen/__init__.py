"""Certificate generator for the 2-descent pipeline: computes bases of the
global norm kernel from S-unit style relations and emits certificate JSON."""

__version__ = "1.0.0"
