"""Request/response models and handlers shared by the HTTP app and the CLI."""
