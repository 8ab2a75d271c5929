import { readFile, writeFile } from "node:fs/promises";

import type { TextRecord, VectorRecord } from "./types.js";

export async function readTextRecords(path: string): Promise<TextRecord[]> {
  const raw = await readFile(path, "utf-8");
  const records: TextRecord[] = [];
  const lines = raw.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i]!.trim();
    if (!line) {
      continue;
    }
    let obj: unknown;
    try {
      obj = JSON.parse(line);
    } catch (err) {
      throw new Error(`${path}:${i + 1}: invalid JSON (${(err as Error).message})`);
    }
    const rec = obj as Record<string, unknown>;
    if (typeof rec.id !== "string") {
      throw new Error(`${path}:${i + 1}: missing string 'id'`);
    }
    if (typeof rec.text !== "string") {
      throw new Error(`${path}:${i + 1}: missing string 'text'`);
    }
    const record: TextRecord = { id: rec.id, text: rec.text };
    if (typeof rec.label === "string") {
      record.label = rec.label;
    }
    if (typeof rec.timestamp === "number" && Number.isInteger(rec.timestamp)) {
      record.timestamp = rec.timestamp;
    }
    records.push(record);
  }
  return records;
}

export function vectorRecordLine(record: VectorRecord): string {
  const obj: Record<string, unknown> = { id: record.id, vector: record.vector };
  if (record.label !== undefined) {
    obj.label = record.label;
  }
  if (record.timestamp !== undefined) {
    obj.timestamp = record.timestamp;
  }
  return JSON.stringify(obj);
}

export async function writeNdjson(path: string, lines: string[]): Promise<void> {
  await writeFile(path, lines.map((l) => l + "\n").join(""), "utf-8");
}
