"""fwatch: desk-scale AIS vessel monitoring.

Decodes AIVDM logs, reconstructs per-vessel tracks, classifies vessels,
detects apparent fishing effort, geofences it against managed-zone
closures, grids it for heatmaps, and serves the lot over a read-only
JSON API.
"""

__version__ = "0.1.0"
