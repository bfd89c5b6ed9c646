"""Brute-force oracles, instance generators and corpora."""
