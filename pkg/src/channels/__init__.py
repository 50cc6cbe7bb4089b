# Local Channels and Monotonicity Scan
