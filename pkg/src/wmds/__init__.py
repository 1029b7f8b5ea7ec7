"""Local p-parts of Weyl group multiple Dirichlet series, by averaging over W."""

__version__ = "0.1.0"
