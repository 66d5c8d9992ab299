# Deterministic parameter sweeps and dataset export
