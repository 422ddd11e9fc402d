"""Numerical engine: model, strategies, simulation, Monte Carlo and verification."""
