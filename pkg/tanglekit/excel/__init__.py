"""tanglekit Excel export."""
