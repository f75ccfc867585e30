"""Verification toolkit for generating large groups with fixed-order elements.

Subpackages cover permutation arithmetic (perms), a deterministic
stabilizer-chain engine (engine), explicit generator families (families),
genus arithmetic (genus), integer symplectic realizations (sympl), the
curve-orbit certifier (curves, lantern), Monte Carlo estimation (estimate),
reporting (report), caching (cache), and the command line (cli).
"""

__version__ = "0.1.0"
