"""Partially-symmetric Macdonald polynomials with exact q,t arithmetic."""
