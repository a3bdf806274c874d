import "./style.css";

import { ApiClient } from "./api";
import { ExplorerView } from "./views/explorer";
import { ProfileView } from "./views/profile";
import { WorkflowView } from "./views/workflow";

const TABS = ["workflow", "report", "profile"] as const;
type Tab = (typeof TABS)[number];

export class App {
  private profile: string | null = null;
  private reportEnabled = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async start(): Promise<void> {
    this.root.textContent = "";
    const banner = document.createElement("div");
    banner.className = "banner";
    banner.hidden = true;
    this.root.appendChild(banner);

    let profiles: string[];
    try {
      profiles = await this.api.listProfiles();
    } catch {
      banner.hidden = false;
      banner.textContent = "API unreachable — start the service with `modelbench serve`.";
      return;
    }

    const header = document.createElement("header");
    header.className = "app-header";
    const title = document.createElement("h1");
    title.textContent = "modelbench";
    header.appendChild(title);

    const select = document.createElement("select");
    select.className = "profile-select";
    for (const name of profiles) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = name;
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      this.profile = select.value;
      this.show("workflow");
    });
    header.appendChild(select);

    const tabs = document.createElement("nav");
    tabs.className = "tabs";
    for (const tab of TABS) {
      const button = document.createElement("button");
      button.className = "tab";
      button.dataset.tab = tab;
      button.textContent = tab;
      if (tab === "report") button.disabled = true;
      button.addEventListener("click", () => this.show(tab));
      tabs.appendChild(button);
    }
    header.appendChild(tabs);
    this.root.appendChild(header);

    const content = document.createElement("main");
    content.className = "content";
    this.root.appendChild(content);

    this.profile = profiles[0] ?? null;
    if (this.profile === null) {
      content.textContent = "No profiles found. Add one to the profiles directory or PUT /api/profiles/{name}.";
      return;
    }
    // an existing report from an earlier run enables the tab immediately
    try {
      await this.api.report(this.profile);
      this.enableReportTab();
    } catch {
      /* no report yet */
    }
    this.show("workflow");
  }

  enableReportTab(): void {
    this.reportEnabled = true;
    const tab = this.root.querySelector<HTMLButtonElement>('.tab[data-tab="report"]');
    if (tab) tab.disabled = false;
  }

  show(tab: Tab): void {
    if (!this.profile) return;
    if (tab === "report" && !this.reportEnabled) return;
    for (const button of this.root.querySelectorAll<HTMLElement>(".tab")) {
      button.classList.toggle("active", button.dataset.tab === tab);
    }
    const content = this.root.querySelector<HTMLElement>(".content")!;
    content.textContent = "";
    const view = document.createElement("div");
    content.appendChild(view);
    if (tab === "workflow") {
      new WorkflowView(view, this.api, this.profile, {
        onPipelineComplete: () => this.enableReportTab(),
      }).mount();
    } else if (tab === "report") {
      void new ExplorerView(view, this.api, this.profile).load();
    } else {
      void new ProfileView(view, this.api, this.profile).load();
    }
  }
}

const rootElement = document.getElementById("app");
if (rootElement) {
  void new App(rootElement, new ApiClient()).start();
}
