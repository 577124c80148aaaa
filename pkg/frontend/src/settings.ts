/** Service base URL, persisted in browser storage. */

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const BASE_URL_KEY = "editguard.baseUrl";
export const DEFAULT_BASE_URL = "http://127.0.0.1:8080";

export function getBaseUrl(store: KeyValueStore): string {
  return store.getItem(BASE_URL_KEY) ?? DEFAULT_BASE_URL;
}

export function setBaseUrl(store: KeyValueStore, url: string): void {
  store.setItem(BASE_URL_KEY, url.replace(/\/$/, ""));
}
