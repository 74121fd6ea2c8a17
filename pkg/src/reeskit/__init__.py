"""Rees algebra toolkit."""
