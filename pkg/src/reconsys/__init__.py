"""reconsys: distributed target-space scanning, enrichment, attribution,
vulnerability matching and reporting, testable against a simulated network."""

__version__ = "0.1.0"
