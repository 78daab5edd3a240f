from pathlib import Path
import os
import socket
from dotenv import load_dotenv


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# ====== Environment Detection ======
ENVIRONMENT = os.getenv("ENV_NAME")  # explicit ENV_NAME has highest priority

if not ENVIRONMENT:
    hostname = socket.gethostname().lower()

    if (
        "server" in hostname
        or "prod" in hostname
        or BASE_DIR.as_posix().startswith("/var/www")
    ):
        ENVIRONMENT = "production"
    else:
        ENVIRONMENT = "development"

# Load environment file; stdout stays clean for report and CSV output
dotenv_path = BASE_DIR / f".env.{ENVIRONMENT}"
if dotenv_path.exists():
    load_dotenv(dotenv_path)

# ====== Core Settings ======
DEBUG = os.getenv("DEBUG", "false").lower() == "true"
SECRET_KEY = os.getenv("SECRET_KEY")
if not SECRET_KEY and (DEBUG or ENVIRONMENT == "development"):
    SECRET_KEY = "insecure-development-key-polyharmonic-toolkit"
ALLOWED_HOSTS = (
    os.getenv("ALLOWED_HOSTS", "").split(",") if os.getenv("ALLOWED_HOSTS") else []
)


# Application definition
INSTALLED_APPS = [
    "django.contrib.admin",
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.sessions",
    "django.contrib.messages",
    "django.contrib.staticfiles",
    # Third party apps
    "rest_framework",
    "django_filters",
    # Project apps
    "classification",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.contrib.sessions.middleware.SessionMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.csrf.CsrfViewMiddleware",
    "django.contrib.auth.middleware.AuthenticationMiddleware",
    "django.contrib.messages.middleware.MessageMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

ROOT_URLCONF = "polyharmonic_toolkit.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
                "django.contrib.auth.context_processors.auth",
                "django.contrib.messages.context_processors.messages",
            ],
        },
    },
]

WSGI_APPLICATION = "polyharmonic_toolkit.wsgi.application"


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases
# The run archive defaults to SQLite; set DB_ENGINE for PostgreSQL.

DB_ENGINE = os.getenv("DB_ENGINE", "django.db.backends.sqlite3")

if DB_ENGINE.endswith("sqlite3"):
    DATABASES = {
        "default": {
            "ENGINE": DB_ENGINE,
            "NAME": os.getenv("DB_NAME", str(BASE_DIR / "db.sqlite3")),
        }
    }
else:
    DATABASES = {
        "default": {
            "ENGINE": DB_ENGINE,
            "NAME": os.getenv("DB_NAME"),
            "USER": os.getenv("DB_USER"),
            "PASSWORD": os.getenv("DB_PASSWORD"),
            "HOST": os.getenv("DB_HOST", "localhost"),
            "PORT": os.getenv("DB_PORT", "5432"),
        }
    }


# ====== REST Framework Configuration ======
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [
        "rest_framework.authentication.SessionAuthentication",  # Keep for admin
    ],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.IsAuthenticatedOrReadOnly",
    ],
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "DEFAULT_FILTER_BACKENDS": [
        "django_filters.rest_framework.DjangoFilterBackend",
    ],
}

# ====== Verification Toolkit Configuration ======
VERIFICATION = {
    "TOLERANCE": float(os.getenv("VERIFY_TOL", "1e-6")),
    "TRUNCATION_RADIUS": float(os.getenv("VERIFY_RMAX", "200")),
    "PRECISION_BITS": int(os.getenv("VERIFY_PRECISION", "128")),
    "SAMPLE_RADII": tuple(
        float(r) for r in os.getenv("VERIFY_SAMPLE_RADII", "0,0.5,1,2,5").split(",")
    ),
    "CONSTANT_MODE": os.getenv("VERIFY_CONSTANTS", "auto"),
    "MAX_N": int(os.getenv("VERIFY_MAX_N", "6")),
    "ODE_TOLERANCE": float(os.getenv("VERIFY_ODE_TOL", "1e-12")),
    "ODE_RMAX": float(os.getenv("VERIFY_ODE_RMAX", "50")),
    "POSITIVITY_FLOOR": float(os.getenv("VERIFY_POSITIVITY_FLOOR", "1e-6")),
    "DECIMAL_DIGITS": int(os.getenv("VERIFY_DIGITS", "20")),
    "GOLDEN_TABLE": Path(
        os.getenv(
            "VERIFY_GOLDEN_TABLE",
            BASE_DIR / "classification" / "golden" / "golden_table.json",
        )
    ),
}

# ====== Logging ======
# Everything goes to stderr; stdout carries command output only.
LOG_LEVEL = os.getenv("LOG_LEVEL", "DEBUG" if DEBUG else "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": LOG_LEVEL,
    },
    "loggers": {
        "classification": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}

# Password validation
# https://docs.djangoproject.com/en/5.2/ref/settings/#auth-password-validators

AUTH_PASSWORD_VALIDATORS = [
    {
        "NAME": "django.contrib.auth.password_validation.UserAttributeSimilarityValidator",
    },
    {
        "NAME": "django.contrib.auth.password_validation.MinimumLengthValidator",
    },
]


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Static files (CSS, JavaScript, Images)
# https://docs.djangoproject.com/en/5.2/howto/static-files/

STATIC_URL = "/static/"
STATIC_ROOT = BASE_DIR / "staticfiles"

# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
