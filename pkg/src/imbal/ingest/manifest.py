"""Benchmark dataset manifest: the 73 OpenML tables the suite targets.

Statistics are as published by the source platform (sample and feature
counts, majority/minority imbalance ratio, task arity, domain).  Names
resolve to OpenML ids at fetch time.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidArgumentError

__all__ = ["ManifestEntry", "DATASET_MANIFEST", "manifest_names", "find_entry"]


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    n_samples: int
    n_features: int
    imbalance_ratio: float
    task: str  # "binary" | "multiclass"
    domain: str


_E = ManifestEntry

DATASET_MANIFEST: tuple[ManifestEntry, ...] = (
    _E("bwin_amlb", 530, 13, 2.01, "binary", "Behavioral Analytics"),
    _E("mozilla4", 15545, 5, 2.04, "binary", "Software Engineering"),
    _E("mc2", 161, 39, 2.10, "binary", "Software Engineering"),
    _E("vertebra-column", 310, 6, 2.10, "binary", "Medicine"),
    _E("wholesale-customers", 440, 8, 2.10, "binary", "Retail"),
    _E("law-school-admission-bianry", 20800, 14, 2.11, "binary", "Education"),
    _E("bank32nh", 8192, 32, 2.22, "binary", "Finance"),
    _E("elevators", 16599, 18, 2.24, "binary", "Robotics"),
    _E("cpu_small", 8192, 12, 2.31, "binary", "Computer Systems"),
    _E("Credit_Approval_Classification", 1000, 50, 2.33, "binary", "Finance"),
    _E("house_8L", 22784, 8, 2.38, "binary", "Real Estate"),
    _E("house_16H", 22784, 16, 2.38, "binary", "Real Estate"),
    _E("phoneme", 5404, 5, 2.41, "binary", "Speech Recognition"),
    _E("ilpd-numeric", 583, 10, 2.49, "binary", "Medicine"),
    _E("planning-relax", 182, 12, 2.50, "binary", "Neuroscience"),
    _E("MiniBooNE", 130064, 50, 2.56, "binary", "Physics"),
    _E("machine_cpu", 209, 6, 2.73, "binary", "Computer Systems"),
    _E("telco-customer-churn", 7043, 39, 2.77, "binary", "Business"),
    _E("haberman", 306, 3, 2.78, "binary", "Medicine"),
    _E("vehicle", 846, 18, 2.88, "binary", "Automotive"),
    _E("cpu", 209, 36, 2.94, "binary", "Computer Systems"),
    _E("ada", 4147, 48, 3.03, "binary", "Sociology"),
    _E("adult", 48842, 107, 3.18, "binary", "Sociology"),
    _E("blood-transfusion-service-center", 748, 4, 3.20, "binary", "Health"),
    _E("default-of-credit-card-clients", 30000, 23, 3.52, "binary", "Finance"),
    _E("Customer_Churn_Classification", 175028, 24, 3.74, "binary", "Business"),
    _E("SPECTF", 267, 44, 3.85, "binary", "Medicine"),
    _E("Medical-Appointment-No-Shows", 110527, 36, 3.95, "binary", "Healthcare"),
    _E("JapaneseVowels", 9961, 14, 5.17, "binary", "Speech Recognition"),
    _E("ibm-employee-attrition", 1470, 53, 5.20, "binary", "Human Resources"),
    _E("first-order-theorem-proving", 6118, 51, 5.26, "multiclass", "Automated Reasoning"),
    _E("user-knowledge", 403, 5, 5.38, "multiclass", "Education"),
    _E("online-shoppers-intention", 12330, 28, 5.46, "binary", "E-commerce"),
    _E("kc1", 2109, 21, 5.47, "binary", "Software Engineering"),
    _E("thoracic-surgery", 470, 16, 5.71, "binary", "Medicine"),
    _E("UCI_churn", 3333, 18, 5.90, "binary", "Business"),
    _E("arsenic-female-bladder", 559, 4, 5.99, "binary", "Medicine"),
    _E("okcupid_stem", 26677, 117, 6.83, "multiclass", "Sociology"),
    _E("ecoli", 327, 7, 7.15, "multiclass", "Biology"),
    _E("pc4", 1458, 37, 7.19, "binary", "Software Engineering"),
    _E("bank-marketing", 4521, 48, 7.68, "binary", "Finance"),
    _E("Diabetes-130-Hospitals_(Fairlearn)", 101766, 50, 7.96, "binary", "Medicine"),
    _E("Otto-Group-Product-Classification-Challenge", 61878, 93, 8.36, "multiclass", "E-commerce"),
    _E("eucalyptus", 4331, 26, 8.54, "multiclass", "Computer Systems"),
    _E("pendigits", 10992, 16, 8.61, "binary", "Image Recognition"),
    _E("pc3", 1563, 37, 8.77, "binary", "Software Engineering"),
    _E("page-blocks-bin", 5473, 10, 8.77, "binary", "Document Processing"),
    _E("optdigits", 5620, 64, 8.83, "binary", "Image Recognition"),
    _E("mfeat-zernike", 2000, 47, 9.00, "binary", "Image Recognition"),
    _E("mfeat-fourier", 2000, 76, 9.00, "binary", "Image Recognition"),
    _E("mfeat-karhunen", 2000, 64, 9.00, "binary", "Image Recognition"),
    _E("Pulsar-Dataset-HTRU2", 17898, 8, 9.92, "binary", "Astronomy"),
    _E("vowel", 990, 26, 10.00, "binary", "Speech Recognition"),
    _E("heart-h", 294, 13, 12.53, "multiclass", "Medicine"),
    _E("pc1", 1109, 21, 13.40, "binary", "Software Engineering"),
    _E("seismic-bumps", 2584, 22, 14.20, "binary", "Geophysics"),
    _E("ozone-level-8hr", 2534, 72, 14.84, "binary", "Environmental Science"),
    _E("microaggregation2", 20000, 20, 15.02, "multiclass", "Privacy Data Mining"),
    _E("Sick_numeric", 3772, 29, 15.33, "binary", "Medicine"),
    _E("insurance_company", 9822, 85, 15.76, "binary", "Finance"),
    _E("wilt", 4839, 5, 17.54, "binary", "Remote Sensing"),
    _E("Click_prediction_small", 149639, 11, 21.37, "binary", "Advertising"),
    _E("jannis", 83733, 54, 22.83, "multiclass", "Image Recognition"),
    _E("letter", 20000, 16, 23.60, "binary", "Image Recognition"),
    _E("walking-activity", 149332, 4, 24.14, "multiclass", "Biometrics"),
    _E("helena", 65196, 27, 36.08, "multiclass", "Image Recognition"),
    _E("mammography", 11183, 6, 42.01, "binary", "Medicine"),
    _E("dis", 3772, 29, 64.03, "binary", "Biology"),
    _E("Satellite", 5100, 36, 67.00, "binary", "Remote Sensing"),
    _E("Employee-Turnover-at-TECHCO", 34452, 9, 68.74, "binary", "Human Resources"),
    _E("page-blocks", 5473, 10, 175.46, "multiclass", "Document Processing"),
    _E("allbp", 3772, 29, 257.79, "multiclass", "Biology"),
    _E("CreditCardFraudDetection", 284807, 30, 577.88, "binary", "Finance"),
)


def manifest_names() -> tuple[str, ...]:
    return tuple(e.name for e in DATASET_MANIFEST)


def find_entry(name: str) -> ManifestEntry:
    for e in DATASET_MANIFEST:
        if e.name == name:
            return e
    raise InvalidArgumentError(f"dataset {name!r} is not in the manifest")
