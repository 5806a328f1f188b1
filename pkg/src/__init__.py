"""HII principal series toolkit source package."""
