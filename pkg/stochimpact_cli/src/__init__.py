"""Engine and configuration layers behind the stochimpact CLI."""
