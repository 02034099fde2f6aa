import hypothesis

hypothesis.settings.register_profile(
    "iwalab", deadline=None, max_examples=50, derandomize=True
)
hypothesis.settings.load_profile("iwalab")
