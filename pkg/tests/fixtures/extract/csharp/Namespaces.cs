using System.Collections.Generic;

namespace App.Data
{
    public class Repo
    {
        private readonly List<string> _rows = new();

        /// <summary>Append one row.</summary>
        public void Add(string row)
        {
            _rows.Add(row);
        }

        // Count of stored rows.
        public int Count()
        {
            return _rows.Count;
        }
    }
}
