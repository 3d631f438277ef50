"""Strategy-restricted arenas and fuzzy Kripke abstraction"""
