from django.apps import apps
from django.contrib import admin

# Register all models from the classification app
app_config = apps.get_app_config("classification")
for model in app_config.get_models():
    try:
        admin.site.register(model)
    except admin.sites.AlreadyRegistered:
        pass
