"""Benchmark generation and timing"""
