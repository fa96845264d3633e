"""Verification: sampled checks, dimension oracles and the bilinear-forms example"""
