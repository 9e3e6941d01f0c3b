"""Base learners: weighted CART trees, exact kNN, k-means, linear SVM."""

from .backend import HAVE_NUMBA, USE_NUMBA, backend_name
from .kernels import warmup
from .knn import knn_query
from .kmeans import kmeans
from .svm import LinearSVM, fit_linear_svm
from .tree import DecisionTree, TreeParams, fit_tree

__all__ = [
    "HAVE_NUMBA",
    "USE_NUMBA",
    "backend_name",
    "warmup",
    "knn_query",
    "kmeans",
    "LinearSVM",
    "fit_linear_svm",
    "DecisionTree",
    "TreeParams",
    "fit_tree",
]
