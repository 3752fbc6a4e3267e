"""Generate reference and sample configuration pages for the documentation."""

import json
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    import mkdocs.config.defaults  # pragma: no cover


SKIPPED_MODULES = ("olspace",)


def generate_reference_pages(docs_dir: str, nav: list):
    """Generate one `::: module` page per public module."""
    reference_path = Path(docs_dir, "reference")
    reference_path.mkdir(exist_ok=True)
    source_path = Path("./olspace")
    reference_nav = []
    for path in sorted(source_path.rglob("*.py")):
        module_path = path.relative_to(".").with_suffix("")
        doc_path = str(path.relative_to(source_path).with_suffix(".md")).replace("/", ".")
        full_doc_path = reference_path / doc_path
        nav_path = full_doc_path.relative_to(docs_dir).as_posix()

        parts = module_path.parts
        if parts[-1] == "__main__":
            continue
        if parts[-1] == "__init__":
            parts = parts[:-1]

        import_path = ".".join(parts)
        if import_path in SKIPPED_MODULES:
            continue

        full_doc_path.parent.mkdir(exist_ok=True, parents=True)
        full_doc_path.write_text(f"::: {import_path}\n", encoding="utf-8")
        reference_nav.append({import_path: nav_path})
    nav.append({"Reference": reference_nav})


def generate_config_pages(docs_dir: str, nav: list):
    """Render the sample space configurations shipped in `./configs`."""
    configs_path = Path(docs_dir, "configs.md")
    configs_path.unlink(missing_ok=True)
    with configs_path.open("w", encoding="utf-8") as file:
        file.write("# Sample configurations\n\n")
        for path in sorted(Path("./configs").glob("*.json")):
            page_title = path.stem.replace("_", " ").title()
            body = json.dumps(json.loads(path.read_text(encoding="utf-8")), indent=4)
            file.write(f"## {page_title}\n\n`{path.as_posix()}`\n\n```json\n{body}\n```\n\n")
    nav.append({"Sample configurations": "configs.md"})


def on_config(config: "mkdocs.config.defaults.MkDocsConfig"):
    """Hook run by mkdocs before the build."""
    generate_config_pages(config.docs_dir, config.nav)
    generate_reference_pages(config.docs_dir, config.nav)
