"""Suite case execution."""
