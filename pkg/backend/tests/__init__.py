"""Tests for the bowtie disruption toolkit."""
