"""Tests for the stochimpact command-line interface."""
