"""voltprobe tests."""
