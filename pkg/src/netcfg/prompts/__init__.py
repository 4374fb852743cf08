from netcfg.prompts.forge import (
    DEFAULT_STATUS_BUDGET,
    PromptBundle,
    PromptMessage,
    Purpose,
    Role,
    build_classification_prompt,
    build_generation_prompt,
    build_refine_prompt,
    build_translation_prompt,
    fit_status,
    render,
)

__all__ = [
    "DEFAULT_STATUS_BUDGET", "PromptBundle", "PromptMessage", "Purpose", "Role",
    "build_classification_prompt", "build_generation_prompt", "build_refine_prompt",
    "build_translation_prompt", "fit_status", "render",
]
