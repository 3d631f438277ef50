"""Fuzzy CTL fixpoints"""
