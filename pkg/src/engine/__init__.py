"""Model checking engine"""
