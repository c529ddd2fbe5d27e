"""Configuration package for Django settings."""
