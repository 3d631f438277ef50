"""Case-study scenarios"""
