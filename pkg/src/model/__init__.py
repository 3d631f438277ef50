"""Game structures: rfCGS definition, loading and validation"""
