/**
 * Profile editor: a small form over the common fields with a raw-JSON
 * fallback. All validation is delegated to the PUT endpoint so the UI and
 * the CLI share one validator; schema errors render with their key path.
 */

import { ApiClient } from "../api";

const FORM_FIELDS: [path: string, label: string][] = [
  ["name", "Name"],
  ["version", "Version"],
  ["output_path", "Output path"],
  ["scan.dataset_path", "Dataset path"],
  ["parse.parser_language", "Parser"],
];

function getPath(obj: Record<string, unknown>, path: string): unknown {
  let current: unknown = obj;
  for (const key of path.split(".")) {
    if (typeof current !== "object" || current === null) return undefined;
    current = (current as Record<string, unknown>)[key];
  }
  return current;
}

function setPath(obj: Record<string, unknown>, path: string, value: unknown): void {
  const keys = path.split(".");
  let current = obj;
  for (const key of keys.slice(0, -1)) {
    if (typeof current[key] !== "object" || current[key] === null) current[key] = {};
    current = current[key] as Record<string, unknown>;
  }
  current[keys[keys.length - 1]] = value;
}

export class ProfileView {
  private current: Record<string, unknown> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly profile: string,
  ) {}

  async load(): Promise<void> {
    this.root.textContent = "";
    this.root.classList.add("profile-editor");
    try {
      this.current = await this.api.getProfile(this.profile);
    } catch (error) {
      const notice = document.createElement("p");
      notice.className = "notice";
      notice.textContent = `Could not load profile: ${error}`;
      this.root.appendChild(notice);
      return;
    }
    this.render();
  }

  private render(): void {
    const data = this.current!;
    const form = document.createElement("form");
    form.className = "profile-form";
    const inputs = new Map<string, HTMLInputElement>();

    for (const [path, label] of FORM_FIELDS) {
      const row = document.createElement("label");
      row.className = "form-row";
      const caption = document.createElement("span");
      caption.textContent = label;
      row.appendChild(caption);
      const input = document.createElement("input");
      input.name = path;
      input.value = String(getPath(data, path) ?? "");
      row.appendChild(input);
      inputs.set(path, input);
      form.appendChild(row);
    }

    const raw = document.createElement("textarea");
    raw.className = "raw-json";
    raw.rows = 18;
    raw.value = JSON.stringify(data, null, 2);
    const rawLabel = document.createElement("details");
    rawLabel.className = "raw-json-details";
    const summary = document.createElement("summary");
    summary.textContent = "Raw JSON";
    rawLabel.appendChild(summary);
    rawLabel.appendChild(raw);

    const save = document.createElement("button");
    save.type = "submit";
    save.textContent = "Validate & save";
    const feedback = document.createElement("p");
    feedback.className = "form-feedback";

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void (async () => {
        let body: Record<string, unknown>;
        if (rawLabel.open) {
          try {
            body = JSON.parse(raw.value);
          } catch (error) {
            feedback.textContent = `Invalid JSON: ${error}`;
            feedback.dataset.state = "error";
            return;
          }
        } else {
          body = JSON.parse(JSON.stringify(this.current));
          for (const [path, input] of inputs) setPath(body, path, input.value);
        }
        const result = await this.api.putProfile(this.profile, body);
        if (result.ok) {
          feedback.textContent = "Saved.";
          feedback.dataset.state = "ok";
          this.current = body;
          raw.value = JSON.stringify(body, null, 2);
        } else {
          feedback.textContent = `Schema violation at ${result.path}: ${result.message}`;
          feedback.dataset.state = "error";
        }
      })();
    });

    form.appendChild(rawLabel);
    form.appendChild(save);
    form.appendChild(feedback);
    this.root.appendChild(form);
  }
}
