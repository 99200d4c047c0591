"""HTTP service wrapping the core package; see app.py."""
