"""Search for high-distance stabilizer codes by fusing tensor-network seeds."""

__version__ = "0.1.0"
