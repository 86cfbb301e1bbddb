"""toricres: exact toric residues, sparse resultants, subresultants and global residues."""

__version__ = "0.1.0"
