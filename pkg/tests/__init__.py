"""
Crepant Test Suite
"""
