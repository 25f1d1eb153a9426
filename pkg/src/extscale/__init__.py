"""extscale: Hörmander spaces with RO-varying weights, verified on model problems."""

__version__ = "0.1.0"
