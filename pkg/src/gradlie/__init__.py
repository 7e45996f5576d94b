"""gradlie: exact constructions and classification of abelian-group gradings
on the classical central simple real Lie algebras."""

__version__ = "0.1.0"
