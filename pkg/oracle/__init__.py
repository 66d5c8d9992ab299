# Brute-force validation layer: truncated Fock spaces, dense eigensolves, symplectic modes
