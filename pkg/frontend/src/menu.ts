/* Context-menu model: the command surface of the UI.
 *
 * Every item maps onto engine commands or session file operations; the menu
 * itself decides nothing about scene semantics.  "Restore default view" is a
 * root item so it is always right-click + one click away. */

import { DemoName, LayoutDocument } from "./engine.js";
import { CommandName } from "./trace.js";

export interface MenuItem {
  label: string;
  /* engine command to apply, if the item is directly executable */
  action?: { name: CommandName; args: Record<string, unknown> };
  /* items needing user input (a color, an expression, a file) before they
   * can be turned into a command; the shell prompts and fills the args */
  prompt?: "color" | "font" | "size" | "expression" | "save-file" | "load-file";
  children?: MenuItem[];
}

export function buildMenu(doc: LayoutDocument, targetId: string | null, demo: DemoName): MenuItem[] {
  const items: MenuItem[] = [];
  const elements = new Map(doc.scene.elements.map((el) => [el.id, el]));
  const groups = new Map(doc.scene.groups.map((g) => [g.id, g]));
  const target = targetId ? elements.get(targetId) : undefined;

  if (target) {
    const group = groups.get(target.id);
    const what = group ? `group ${group.title || group.id}` : target.id;
    items.push({ label: `Hide ${what}`, action: { name: "hide", args: { target: target.id } } });
    items.push(
      target.movable
        ? { label: `Fix ${what}`, action: { name: "fix", args: { target: target.id } } }
        : { label: `Unfix ${what}`, action: { name: "unfix", args: { target: target.id } } },
    );
    items.push({ label: "Set color...", prompt: "color" });
    items.push({ label: "Set font...", prompt: "font" });
    items.push({ label: "Set size...", prompt: "size" });
    if (!group && target.group_tag) {
      items.push({
        label: `Spread this view over ${target.group_tag}`,
        action: { name: "spread", args: { sample: target.id, group: target.group_tag } },
      });
    }
    if (group?.temporary) {
      items.push({
        label: "Dissolve temporary group",
        action: { name: "dissolve", args: { group: group.id } },
      });
    }
    if (demo === "functions" && target.kind["shape"] === "plot-area") {
      items.push({ label: "Remove plot", action: { name: "remove-plot", args: { id: target.id } } });
      items.push({ label: "Edit expression...", prompt: "expression" });
    }
  }

  const hidden = doc.scene.elements.filter((el) => el.hidden && !groups.get(el.id));
  if (hidden.length > 0) {
    items.push({
      label: "Show hidden",
      children: hidden.map((el) => ({
        label: el.id,
        action: { name: "show", args: { target: el.id } },
      })),
    });
  }

  if (demo === "functions") {
    items.push({ label: "Add plot...", prompt: "expression" });
  }
  /* root level: reachable in two clicks from any state */
  items.push({ label: "Restore default view", action: { name: "restore-default", args: {} } });
  items.push({ label: "Save layout...", prompt: "save-file" });
  items.push({ label: "Load layout...", prompt: "load-file" });
  return items;
}
