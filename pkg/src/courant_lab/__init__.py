"""courant-lab: exact symbolic verification of bracket geometries on
trivialized bundles over polynomial coordinate patches."""

__version__ = "0.1.0"
