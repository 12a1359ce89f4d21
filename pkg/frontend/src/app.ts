// The application shell: editor with highlight overlay, directory panel,
// query box, answer set and execute actions, result area, and session
// controls. All language processing happens on the server; this module only
// moves text and frame scripts between the DOM and the API client.

import { ApiClient, ApiError } from "./api.js";
import type { Diagnostic, TreeNode } from "./api.js";
import { highlight } from "./highlight.js";
import { FramePlayer } from "./player.js";
import type { Canvas2D } from "./player.js";

export interface AppDeps {
  raf?: (cb: (now: number) => void) => number;
  cancelRaf?: (id: number) => void;
  createContext?: (canvas: HTMLCanvasElement) => Canvas2D | null;
  confirmDiscard?: () => boolean;
  storage?: Pick<Storage, "getItem" | "setItem" | "removeItem">;
}

interface OpenFile {
  id: string;
  name: string;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export class App {
  api: ApiClient;
  username: string | null = null;
  openFile: OpenFile | null = null;
  dirty = false;
  treeVisible = true;
  busy = false;
  player: FramePlayer | null = null;

  private root: HTMLElement;
  private deps: Required<AppDeps>;
  private tree: TreeNode | null = null;

  // DOM regions, created once in buildLayout
  private sessionBox!: HTMLElement;
  private banner!: HTMLElement;
  private panel!: HTMLElement;
  private toolbar!: HTMLElement;
  private fileLabel!: HTMLElement;
  private buffer!: HTMLTextAreaElement;
  private highlightLayer!: HTMLElement;
  private queryInput!: HTMLInputElement;
  private actionButtons: HTMLButtonElement[] = [];
  private resultText!: HTMLElement;
  private canvas!: HTMLCanvasElement;

  constructor(root: HTMLElement, api: ApiClient, deps: AppDeps = {}) {
    this.root = root;
    this.api = api;
    this.deps = {
      raf: deps.raf ?? ((cb) => window.requestAnimationFrame(cb)),
      cancelRaf: deps.cancelRaf ?? ((id) => window.cancelAnimationFrame(id)),
      createContext:
        deps.createContext ??
        ((canvas) => canvas.getContext("2d") as Canvas2D | null),
      confirmDiscard:
        deps.confirmDiscard ??
        (() => window.confirm("Discard unsaved changes?")),
      storage: deps.storage ?? window.localStorage,
    };
    this.buildLayout();
    window.addEventListener("beforeunload", (event) => {
      if (this.dirty) event.preventDefault();
    });
    this.render();
  }

  // Restore a stored session, if any, and load the tree.
  async init(): Promise<void> {
    const token = this.deps.storage.getItem("sparclab.token");
    const username = this.deps.storage.getItem("sparclab.username");
    if (!token || !username) return;
    this.api.token = token;
    try {
      this.tree = await this.api.tree();
      this.username = username;
    } catch {
      this.api.token = null;
      this.deps.storage.removeItem("sparclab.token");
      this.deps.storage.removeItem("sparclab.username");
    }
    this.render();
  }

  // -- session -------------------------------------------------------------

  async login(username: string, password: string): Promise<void> {
    await this.guard(async () => {
      await this.api.login(username, password);
      this.username = username;
      this.deps.storage.setItem("sparclab.token", this.api.token ?? "");
      this.deps.storage.setItem("sparclab.username", username);
      this.tree = await this.api.tree();
    });
  }

  async register(username: string, password: string): Promise<void> {
    await this.guard(async () => {
      await this.api.createUser(username, password);
      await this.api.login(username, password);
      this.username = username;
      this.deps.storage.setItem("sparclab.token", this.api.token ?? "");
      this.deps.storage.setItem("sparclab.username", username);
      this.tree = await this.api.tree();
    });
  }

  async logoutUser(): Promise<void> {
    if (this.dirty && !this.deps.confirmDiscard()) return;
    await this.guard(async () => {
      await this.api.logout();
    });
    this.username = null;
    this.openFile = null;
    this.dirty = false;
    this.tree = null;
    this.deps.storage.removeItem("sparclab.token");
    this.deps.storage.removeItem("sparclab.username");
    this.render();
  }

  // -- files ---------------------------------------------------------------

  async refreshTree(): Promise<void> {
    this.tree = await this.api.tree();
    this.render();
  }

  async openFileById(fileId: string): Promise<void> {
    if (this.dirty && !this.deps.confirmDiscard()) return;
    await this.guard(async () => {
      const file = await this.api.getFile(fileId);
      this.openFile = { id: file.file_id, name: file.name };
      this.buffer.value = file.content;
      this.dirty = false;
      this.syncHighlight();
    });
  }

  async save(): Promise<void> {
    if (!this.openFile) return;
    await this.guard(async () => {
      await this.api.saveFile(this.openFile!.id, this.buffer.value);
      this.dirty = false;
    });
  }

  async createFile(name: string, folder = ""): Promise<void> {
    await this.guard(async () => {
      const file = await this.api.createFile(name, folder, this.buffer.value);
      this.openFile = { id: file.file_id, name: file.name };
      this.dirty = false;
      this.tree = await this.api.tree();
    });
  }

  async createFolder(name: string, parent = ""): Promise<void> {
    await this.guard(async () => {
      await this.api.createFolder(name, parent);
      this.tree = await this.api.tree();
    });
  }

  async renameFile(fileId: string, name: string): Promise<void> {
    await this.guard(async () => {
      await this.api.renameFile(fileId, name);
      if (this.openFile?.id === fileId) this.openFile.name = name;
      this.tree = await this.api.tree();
    });
  }

  async deleteFile(fileId: string): Promise<void> {
    await this.guard(async () => {
      await this.api.deleteFile(fileId);
      if (this.openFile?.id === fileId) {
        this.openFile = null;
        this.dirty = false;
      }
      this.tree = await this.api.tree();
    });
  }

  toggleDirectory(): void {
    this.treeVisible = !this.treeVisible;
    this.render();
  }

  // -- language actions ----------------------------------------------------

  async submitQuery(): Promise<void> {
    await this.runAction(async () => {
      const response = await this.api.query(this.buffer.value, this.queryInput.value);
      this.showText(response.text);
    });
  }

  async getAnswerSets(): Promise<void> {
    await this.runAction(async () => {
      const response = await this.api.answerSets(this.buffer.value);
      this.showText(response.text);
    });
  }

  async executeProgram(): Promise<void> {
    await this.runAction(async () => {
      const response = await this.api.execute(this.buffer.value);
      this.player?.stop();
      this.resultText.hidden = true;
      this.canvas.hidden = false;
      const ctx = this.deps.createContext(this.canvas);
      if (!ctx) throw new ApiError(0, "CanvasError", "canvas 2d context unavailable");
      this.player = new FramePlayer(ctx, response.script, {
        raf: this.deps.raf,
        cancelRaf: this.deps.cancelRaf,
      });
      this.player.play();
    });
  }

  // -- rendering -----------------------------------------------------------

  private buildLayout(): void {
    this.root.textContent = "";
    const shell = el("div", "app");

    const header = el("header", "topbar");
    header.appendChild(el("h1", "brand", "sparclab"));
    this.banner = el("div", "error-banner");
    this.banner.hidden = true;
    this.sessionBox = el("div", "session");
    header.appendChild(this.sessionBox);
    shell.appendChild(header);
    shell.appendChild(this.banner);

    const main = el("main", "layout");
    this.panel = el("aside", "file-panel");
    main.appendChild(this.panel);

    const work = el("section", "workspace");
    this.toolbar = el("div", "toolbar");
    work.appendChild(this.toolbar);

    const editor = el("div", "editor");
    this.highlightLayer = el("pre", "highlight-layer");
    const code = el("code");
    this.highlightLayer.appendChild(code);
    this.buffer = el("textarea", "buffer") as HTMLTextAreaElement;
    this.buffer.spellcheck = false;
    this.buffer.addEventListener("input", () => {
      this.dirty = true;
      this.syncHighlight();
      this.renderToolbar();
    });
    this.buffer.addEventListener("scroll", () => {
      this.highlightLayer.scrollTop = this.buffer.scrollTop;
      this.highlightLayer.scrollLeft = this.buffer.scrollLeft;
    });
    editor.appendChild(this.highlightLayer);
    editor.appendChild(this.buffer);
    work.appendChild(editor);

    const actions = el("div", "actions");
    this.queryInput = el("input", "query-input") as HTMLInputElement;
    this.queryInput.placeholder = "query, e.g. neighbor(texas, colorado)";
    const submit = el("button", "submit-query", "Submit");
    submit.addEventListener("click", () => void this.submitQuery());
    const solve = el("button", "get-answer-sets", "Get Answer Sets");
    solve.addEventListener("click", () => void this.getAnswerSets());
    const execute = el("button", "execute", "Execute");
    execute.addEventListener("click", () => void this.executeProgram());
    this.actionButtons = [submit, solve, execute];
    actions.appendChild(this.queryInput);
    actions.appendChild(submit);
    actions.appendChild(solve);
    actions.appendChild(execute);
    work.appendChild(actions);

    const results = el("div", "results");
    this.resultText = el("pre", "result-text");
    this.canvas = el("canvas", "result-canvas") as HTMLCanvasElement;
    this.canvas.width = 500;
    this.canvas.height = 500;
    this.canvas.hidden = true;
    results.appendChild(this.resultText);
    results.appendChild(this.canvas);
    work.appendChild(results);

    main.appendChild(work);
    shell.appendChild(main);
    this.root.appendChild(shell);
  }

  private render(): void {
    this.renderSession();
    this.renderToolbar();
    this.renderPanel();
  }

  private renderSession(): void {
    this.sessionBox.textContent = "";
    if (this.username) {
      this.sessionBox.appendChild(el("span", "who", this.username));
      const logout = el("button", "logout", "Logout");
      logout.addEventListener("click", () => void this.logoutUser());
      this.sessionBox.appendChild(logout);
      return;
    }
    const user = el("input", "login-username") as HTMLInputElement;
    user.placeholder = "username";
    const pass = el("input", "login-password") as HTMLInputElement;
    pass.type = "password";
    pass.placeholder = "password";
    const login = el("button", "login", "Log in");
    login.addEventListener("click", () => void this.login(user.value, pass.value));
    const register = el("button", "register", "Register");
    register.addEventListener(
      "click",
      () => void this.register(user.value, pass.value),
    );
    this.sessionBox.appendChild(user);
    this.sessionBox.appendChild(pass);
    this.sessionBox.appendChild(login);
    this.sessionBox.appendChild(register);
  }

  private renderToolbar(): void {
    this.toolbar.textContent = "";
    if (this.username) {
      const directory = el("button", "toggle-directory", "Directory");
      directory.addEventListener("click", () => this.toggleDirectory());
      this.toolbar.appendChild(directory);

      const save = el("button", "save", "Save");
      save.disabled = !this.openFile;
      save.addEventListener("click", () => void this.save());
      this.toolbar.appendChild(save);
    }
    const label = this.openFile
      ? this.openFile.name + (this.dirty ? " *" : "")
      : this.dirty
        ? "(unsaved buffer)"
        : "";
    this.fileLabel = el("span", "open-file", label);
    this.toolbar.appendChild(this.fileLabel);
  }

  private renderPanel(): void {
    // anonymous mode has no file navigation at all
    if (!this.username) {
      this.panel.hidden = true;
      this.panel.textContent = "";
      return;
    }
    this.panel.hidden = !this.treeVisible;
    this.panel.textContent = "";

    const actions = el("div", "panel-actions");
    const newFile = el("button", "new-file", "New");
    newFile.addEventListener("click", () => {
      const name = window.prompt("File name");
      if (name) void this.createFile(name);
    });
    const newFolder = el("button", "new-folder", "New folder");
    newFolder.addEventListener("click", () => {
      const name = window.prompt("Folder name");
      if (name) void this.createFolder(name);
    });
    actions.appendChild(newFile);
    actions.appendChild(newFolder);
    this.panel.appendChild(actions);

    if (this.tree) {
      this.panel.appendChild(this.renderTreeNode(this.tree));
    }
  }

  private renderTreeNode(node: TreeNode): HTMLElement {
    const list = el("ul", "tree");
    for (const sub of node.folders) {
      const item = el("li", "tree-folder");
      const name = el("span", "folder-name", sub.folder?.name ?? "");
      item.appendChild(name);
      item.appendChild(this.renderTreeNode(sub));
      list.appendChild(item);
    }
    for (const file of node.files) {
      const item = el("li", "tree-file");
      const open = el("button", "file-name", file.name);
      open.addEventListener("click", () => void this.openFileById(file.file_id));
      const rename = el("button", "file-rename", "rename");
      rename.addEventListener("click", () => {
        const name = window.prompt("New name", file.name);
        if (name) void this.renameFile(file.file_id, name);
      });
      const remove = el("button", "file-delete", "delete");
      remove.addEventListener("click", () => void this.deleteFile(file.file_id));
      item.appendChild(open);
      item.appendChild(rename);
      item.appendChild(remove);
      list.appendChild(item);
    }
    return list;
  }

  private syncHighlight(): void {
    const code = this.highlightLayer.firstElementChild as HTMLElement;
    code.innerHTML = highlight(this.buffer.value) + "\n";
  }

  private showText(text: string): void {
    this.player?.stop();
    this.canvas.hidden = true;
    this.resultText.hidden = false;
    this.resultText.textContent = text;
  }

  private showError(error: unknown): void {
    const lines: string[] = [];
    if (error instanceof ApiError) {
      lines.push(`${error.code}: ${error.message}`);
      for (const d of error.diagnostics as Diagnostic[]) {
        lines.push(`${d.line}:${d.column}: ${d.severity}: ${d.message} [${d.code}]`);
      }
    } else {
      lines.push(String(error));
    }
    this.banner.textContent = lines.join("\n");
    this.banner.hidden = false;
  }

  // Wrap a language action: single in-flight request, buttons disabled.
  private async runAction(body: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    for (const button of this.actionButtons) button.disabled = true;
    try {
      this.banner.hidden = true;
      await body();
    } catch (error) {
      this.showError(error);
    } finally {
      this.busy = false;
      for (const button of this.actionButtons) button.disabled = false;
    }
  }

  // Wrap a workspace action: errors go to the banner, DOM re-renders.
  private async guard(body: () => Promise<void>): Promise<void> {
    try {
      this.banner.hidden = true;
      await body();
    } catch (error) {
      this.showError(error);
    }
    this.render();
  }

  // Test hooks
  get bufferValue(): string {
    return this.buffer.value;
  }

  set bufferValue(text: string) {
    this.buffer.value = text;
    this.buffer.dispatchEvent(new Event("input"));
  }

  set queryValue(text: string) {
    this.queryInput.value = text;
  }
}
