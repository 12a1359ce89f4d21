// Typed client for the sparclab HTTP API. The frontend performs no language
// processing of its own: every verdict, answer set, diagnostic, and frame
// script in the UI comes from this client.

export interface Diagnostic {
  code: string;
  line: number;
  column: number;
  message: string;
  severity: string;
}

export interface QueryResponse {
  verdict: "yes" | "no" | "unknown" | null;
  substitutions: Record<string, string>[] | null;
  text: string;
}

export interface SolveResponse {
  answer_sets: string[][];
  truncated: boolean;
  text: string;
}

export interface Shape {
  cmd: string;
  style: Record<string, string | number>;
  args: (string | number)[];
}

export interface FrameScript {
  version: number;
  frames: Shape[][];
}

export interface ExecuteResponse {
  script: FrameScript;
  document: string;
}

export interface FileInfo {
  file_id: string;
  name: string;
  folder: string;
  url: string;
  shared: boolean;
  updated_at: number;
}

export interface FolderInfo {
  folder_id: string;
  name: string;
  parent: string;
  url: string;
}

export interface TreeNode {
  folder: FolderInfo | null;
  folders: TreeNode[];
  files: FileInfo[];
}

export class ApiError extends Error {
  code: string;
  status: number;
  diagnostics: Diagnostic[];
  count: number | null;

  constructor(
    status: number,
    code: string,
    message: string,
    diagnostics: Diagnostic[] = [],
    count: number | null = null,
  ) {
    super(message);
    this.status = status;
    this.code = code;
    this.diagnostics = diagnostics;
    this.count = count;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private baseUrl: string;
  private fetchImpl: FetchLike;
  token: string | null = null;

  constructor(baseUrl = "", fetchImpl: FetchLike = (...a) => fetch(...a)) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  async createUser(username: string, password: string): Promise<void> {
    await this.request("POST", "/api/users", { username, password });
  }

  async login(username: string, password: string): Promise<string> {
    const data = await this.request<{ token: string }>("POST", "/api/session", {
      username,
      password,
    });
    this.token = data.token;
    return data.token;
  }

  async logout(): Promise<void> {
    await this.request("DELETE", "/api/session");
    this.token = null;
  }

  query(program: string, query: string): Promise<QueryResponse> {
    return this.request("POST", "/api/query", { program, query });
  }

  answerSets(program: string, limit: number | null = null): Promise<SolveResponse> {
    return this.request("POST", "/api/answersets", { program, limit });
  }

  execute(program: string): Promise<ExecuteResponse> {
    return this.request("POST", "/api/execute", { program });
  }

  tree(): Promise<TreeNode> {
    return this.request("GET", "/api/tree");
  }

  createFolder(name: string, parent = ""): Promise<FolderInfo> {
    return this.request("POST", "/api/folders", { name, parent });
  }

  renameFolder(folderId: string, name: string): Promise<void> {
    return this.request("PATCH", `/api/folders/${folderId}`, { name });
  }

  deleteFolder(folderId: string): Promise<void> {
    return this.request("DELETE", `/api/folders/${folderId}`);
  }

  createFile(name: string, folder = "", content = ""): Promise<FileInfo> {
    return this.request("POST", "/api/files", { name, folder, content });
  }

  getFile(fileId: string): Promise<FileInfo & { content: string }> {
    return this.request("GET", `/api/files/${fileId}`);
  }

  saveFile(fileId: string, content: string): Promise<FileInfo> {
    return this.request("PUT", `/api/files/${fileId}`, { content });
  }

  renameFile(fileId: string, name: string): Promise<FileInfo> {
    return this.request("PATCH", `/api/files/${fileId}`, { name });
  }

  deleteFile(fileId: string): Promise<void> {
    return this.request("DELETE", `/api/files/${fileId}`);
  }

  async shareFile(fileId: string): Promise<string> {
    const data = await this.request<{ url: string }>(
      "POST",
      `/api/files/${fileId}/share`,
    );
    return data.url;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    let payload: string | undefined;
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
      payload = JSON.stringify(body);
    }
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method,
        headers,
        body: payload,
      });
    } catch (err) {
      throw new ApiError(0, "NetworkError", String(err));
    }
    const text = await response.text();
    let data: unknown = null;
    if (text) {
      try {
        data = JSON.parse(text);
      } catch {
        data = null;
      }
    }
    if (!response.ok) {
      const error = (data as { error?: Record<string, unknown> } | null)?.error;
      throw new ApiError(
        response.status,
        typeof error?.code === "string" ? error.code : "HttpError",
        typeof error?.message === "string" ? error.message : `HTTP ${response.status}`,
        Array.isArray(error?.diagnostics) ? (error.diagnostics as Diagnostic[]) : [],
        typeof error?.count === "number" ? error.count : null,
      );
    }
    return data as T;
  }
}
