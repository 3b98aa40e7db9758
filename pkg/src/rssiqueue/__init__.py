from .pipeline import build_dataset, build_features, detect, label_features

__all__ = ["build_dataset", "build_features", "detect", "label_features"]
