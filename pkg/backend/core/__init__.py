"""Settings and the domain error hierarchy."""
