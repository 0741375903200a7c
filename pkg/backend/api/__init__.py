"""
    HTTP API package for the bowtie toolkit.
"""
