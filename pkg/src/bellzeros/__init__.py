"""Rightmost-zero asymptotics for Bell, Eulerian and related polynomial families."""
